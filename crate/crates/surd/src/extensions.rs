//! Symmetric 2-cocycles and the abelian extensions they classify.
//!
//! A symmetric 2-cocycle on a finite base `A` with values in a fiber `B`
//! encodes an abelian extension `0 → B → E → A → 0` as a carrying rule:
//! `E = B × A` as a set with `(b₁,a₁) + (b₂,a₂) = (b₁+b₂+c(a₁,a₂), a₁+a₂)`.
//! This module converts between cocycles and `Ext(A, B)` classes, forms
//! Baer sums and pushforwards, decides splitness by honest linear algebra
//! (not by classification), builds the total group `E` in canonical form,
//! and enumerates extensions of a homomorphism `B → T` over `E`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::{
    ext_group, hom_from_ambient_images, torsion_part, ExtClass, FgAbGroup, GroupElement, GroupHom,
};
use crate::matrix::{solve_mod, IntMatrix};
use crate::{Error, Result};

/// A normalized symmetric 2-cocycle `c: A × A → B` on a finite base,
/// stored as a full value table indexed by pairs of element indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricCocycle {
    base: FgAbGroup,
    fiber: FgAbGroup,
    table: Vec<GroupElement>,
}

impl SymmetricCocycle {
    /// Validating constructor: requires a finite base, a table of size
    /// `|A|²` with fiber-sized entries, and checks normalization, symmetry,
    /// and the cocycle identity.
    pub fn new(base: FgAbGroup, fiber: FgAbGroup, table: Vec<GroupElement>) -> Result<Self> {
        let c = SymmetricCocycle::new_unchecked(base, fiber, table)?;
        let violations = c.violations();
        if let Some(first) = violations.first() {
            return Err(Error::InvalidCocycle(first.clone()));
        }
        Ok(c)
    }

    /// Size-checked but not law-checked; exists so validators can be fed
    /// deliberately broken tables.
    pub fn new_unchecked(
        base: FgAbGroup,
        fiber: FgAbGroup,
        table: Vec<GroupElement>,
    ) -> Result<Self> {
        let size = match base.order().and_then(|n| n.to_usize()) {
            Some(n) => n,
            None => {
                return Err(Error::InfiniteBase(format!(
                    "cocycle tables need a finite base, got {base}"
                )))
            }
        };
        if table.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: (size * size, 1),
                found: (table.len(), 1),
            });
        }
        for entry in &table {
            if entry.coords().len() != fiber.gen_count() {
                return Err(Error::DimensionMismatch {
                    expected: (fiber.gen_count(), 1),
                    found: (entry.coords().len(), 1),
                });
            }
        }
        let table = table.iter().map(|e| fiber.reduce(e.coords())).collect();
        Ok(SymmetricCocycle { base, fiber, table })
    }

    /// The zero cocycle (the split extension `B ⊕ A`).
    pub fn split(base: FgAbGroup, fiber: FgAbGroup) -> Result<Self> {
        let size = base
            .order()
            .and_then(|n| n.to_usize())
            .ok_or_else(|| Error::InfiniteBase(format!("cocycle tables need a finite base, got {base}")))?;
        let zero = fiber.zero();
        Ok(SymmetricCocycle { base, fiber, table: vec![zero; size * size] })
    }

    pub fn base(&self) -> &FgAbGroup {
        &self.base
    }

    pub fn fiber(&self) -> &FgAbGroup {
        &self.fiber
    }

    /// Raw table in row-major element-index order.
    pub fn table(&self) -> &[GroupElement] {
        &self.table
    }

    fn size(&self) -> usize {
        self.base.order().and_then(|n| n.to_usize()).expect("base is finite by construction")
    }

    fn idx(&self, a: &GroupElement) -> usize {
        self.base.element_index(a).to_usize().expect("base fits in memory")
    }

    pub fn value(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let a = self.base.reduce(a.coords());
        let b = self.base.reduce(b.coords());
        self.table[self.idx(&a) * self.size() + self.idx(&b)].clone()
    }

    /// All law violations: normalization `c(0,b) = 0`, symmetry, and the
    /// cocycle identity `c(a,b) + c(a+b,d) = c(b,d) + c(a,b+d)`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let elements: Vec<GroupElement> =
            self.base.elements().expect("base is finite by construction").collect();
        for b in &elements {
            let v = self.value(&self.base.zero(), b);
            if !self.fiber.is_zero_element(&v) {
                out.push(format!(
                    "not normalized: c(0, {}) = {} ≠ 0",
                    self.base.format_element(b),
                    self.fiber.format_element(&v)
                ));
            }
        }
        for a in &elements {
            for b in &elements {
                if self.value(a, b) != self.value(b, a) {
                    out.push(format!(
                        "not symmetric at ({}, {})",
                        self.base.format_element(a),
                        self.base.format_element(b)
                    ));
                }
            }
        }
        for a in &elements {
            for b in &elements {
                let ab = self.base.add(a, b);
                for d in &elements {
                    let bd = self.base.add(b, d);
                    let lhs = self.fiber.add(&self.value(a, b), &self.value(&ab, d));
                    let rhs = self.fiber.add(&self.value(b, d), &self.value(a, &bd));
                    if lhs != rhs {
                        out.push(format!(
                            "cocycle identity fails at ({}, {}, {})",
                            self.base.format_element(a),
                            self.base.format_element(b),
                            self.base.format_element(d)
                        ));
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum; classifies the Baer sum of the two extensions.
    pub fn baer_sum(&self, other: &SymmetricCocycle) -> Result<SymmetricCocycle> {
        if self.base != other.base || self.fiber != other.fiber {
            return Err(Error::GroupMismatch(
                "Baer sum needs cocycles on the same base and fiber".into(),
            ));
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(x, y)| self.fiber.add(x, y))
            .collect();
        Ok(SymmetricCocycle { base: self.base.clone(), fiber: self.fiber.clone(), table })
    }

    /// Entrywise negation; classifies the inverse extension.
    pub fn negate(&self) -> SymmetricCocycle {
        let table = self.table.iter().map(|x| self.fiber.neg(x)).collect();
        SymmetricCocycle { base: self.base.clone(), fiber: self.fiber.clone(), table }
    }

    /// Per-generator norms `νⱼ = Σ_{t=1}^{nⱼ-1} c(t·eⱼ, eⱼ)`; these
    /// coordinates determine the class of the cocycle.
    fn norms(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.base.gen_count());
        for j in 0..self.base.gen_count() {
            let n_j = self.base.gen_order(j);
            let e_j = self.base.generator(j);
            let mut acc = self.fiber.zero();
            let mut t = BigInt::one();
            while t < n_j {
                let te_j = self.base.smul(&t, &e_j);
                acc = self.fiber.add(&acc, &self.value(&te_j, &e_j));
                t += 1;
            }
            out.push(acc);
        }
        out
    }
}

/// The carrying cocycle of adjoining an `n`-th root: base `Z/n`, value
/// `c(i, j) = ⌊(i+j)/n⌋ · α` on representatives `i, j ∈ [0, n)`.
pub fn radical_cocycle(fiber: &FgAbGroup, alpha: &GroupElement, n: &BigInt) -> SymmetricCocycle {
    assert!(*n >= BigInt::one(), "radical_cocycle needs n ≥ 1");
    let base = FgAbGroup::cyclic(n.clone());
    if base.is_trivial() {
        // A first root changes nothing: the split cocycle on the point.
        return representative_cocycle(&base, fiber, &[]);
    }
    representative_cocycle(&base, fiber, &[fiber.reduce(alpha.coords())])
}

/// The standard representative with prescribed norms: the sum over torsion
/// generators of base-coordinate carrying terms `⌊(aⱼ+bⱼ)/nⱼ⌋ · βⱼ`.
fn representative_cocycle(
    base: &FgAbGroup,
    fiber: &FgAbGroup,
    betas: &[GroupElement],
) -> SymmetricCocycle {
    debug_assert_eq!(betas.len(), base.gen_count());
    let elements: Vec<GroupElement> =
        base.elements().expect("representative cocycles need a finite base").collect();
    let mut table = Vec::with_capacity(elements.len() * elements.len());
    for a in &elements {
        for b in &elements {
            let mut acc = fiber.zero();
            for (j, beta) in betas.iter().enumerate() {
                let carry = (&a.coords()[j] + &b.coords()[j]).div_floor(&base.gen_order(j));
                if !carry.is_zero() {
                    acc = fiber.add(&acc, &fiber.smul(&carry, beta));
                }
            }
            table.push(acc);
        }
    }
    let c = SymmetricCocycle { base: base.clone(), fiber: fiber.clone(), table };
    debug_assert!(c.violations().is_empty());
    c
}

/// Applies `g: B → T` to every value, classifying the pushforward
/// extension.
pub fn pushforward(g: &GroupHom, c: &SymmetricCocycle) -> Result<SymmetricCocycle> {
    if g.source() != c.fiber() {
        return Err(Error::GroupMismatch(format!(
            "pushforward hom source {} does not match cocycle fiber {}",
            g.source(),
            c.fiber()
        )));
    }
    let table = c.table.iter().map(|x| g.apply(x)).collect();
    Ok(SymmetricCocycle { base: c.base.clone(), fiber: g.target().clone(), table })
}

/// The class of a cocycle in `Ext(A, B)`, computed from its norms.
pub fn cocycle_to_class(c: &SymmetricCocycle) -> ExtClass {
    let ext = ext_group(c.base(), c.fiber());
    ext.class_from_fiber_reps(&c.norms()).expect("one norm per base generator")
}

/// A representative cocycle of a class; inverse to [`cocycle_to_class`] on
/// classes (the representative's norms are exactly the chosen fiber
/// representatives).  Errors when the base is not finite.
pub fn class_to_cocycle(e: &ExtClass) -> Result<SymmetricCocycle> {
    if !e.base().is_finite() {
        return Err(Error::InfiniteBase(format!(
            "no cocycle table over infinite base {}",
            e.base()
        )));
    }
    let betas = e.ext().fiber_representatives(e);
    Ok(representative_cocycle(e.base(), e.fiber(), &betas))
}

/// Solves `s(a) + s(b) - s(a+b) = c(a,b)` for a function `s: A → B` with
/// `s(0) = 0`, by exact integer linear algebra (one congruence system per
/// fiber coordinate).  Returns the section values indexed by element index,
/// or `None` when the extension does not split.
///
/// Symmetry and normalization of `c` are assumed (constructors enforce
/// them), which is why only pairs `a ≤ b` of nonzero elements appear as
/// equations.
pub fn splitting_section(c: &SymmetricCocycle) -> Option<Vec<GroupElement>> {
    let base = c.base();
    let fiber = c.fiber();
    let elements: Vec<GroupElement> = base.elements().ok()?.collect();
    let n = elements.len();
    if n == 0 {
        return None; // unreachable: a group has at least the zero element
    }
    let vars = n - 1; // s(a) for a ≠ 0; the column of a is index(a) - 1

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs_elems: Vec<GroupElement> = Vec::new();
    for ia in 1..n {
        for ib in ia..n {
            let a = &elements[ia];
            let b = &elements[ib];
            let mut row = vec![BigInt::zero(); vars];
            row[ia - 1] += 1;
            row[ib - 1] += 1;
            let sum = base.add(a, b);
            let isum = base.element_index(&sum).to_usize().expect("base fits in memory");
            if isum != 0 {
                row[isum - 1] -= 1;
            }
            rows.push(row);
            rhs_elems.push(c.value(a, b));
        }
    }
    let matrix = IntMatrix::from_rows(rows);

    // One congruence system per fiber coordinate, sharing the coefficient
    // matrix; the modulus is the generator order (0 = exact equality).
    let mut per_coord: Vec<Vec<BigInt>> = Vec::with_capacity(fiber.gen_count());
    for k in 0..fiber.gen_count() {
        let rhs: Vec<BigInt> = rhs_elems.iter().map(|v| v.coords()[k].clone()).collect();
        let solution = solve_mod(&matrix, &rhs, &fiber.gen_order(k))?;
        per_coord.push(solution);
    }

    let mut section = Vec::with_capacity(n);
    section.push(fiber.zero());
    for a in 1..n {
        let coords: Vec<BigInt> = per_coord.iter().map(|sol| sol[a - 1].clone()).collect();
        section.push(fiber.reduce(&coords));
    }
    debug_assert!({
        let mut ok = true;
        for a in &elements {
            for b in &elements {
                let ia = base.element_index(a).to_usize().unwrap();
                let ib = base.element_index(b).to_usize().unwrap();
                let is = base.element_index(&base.add(a, b)).to_usize().unwrap();
                let delta =
                    fiber.sub(&fiber.add(&section[ia], &section[ib]), &section[is]);
                ok &= delta == c.value(a, b);
            }
        }
        ok
    });
    Some(section)
}

/// Whether the extension splits, decided by solving for a section — an
/// independent route from classifying the cocycle in `Ext(A, B)`.
pub fn is_split(c: &SymmetricCocycle) -> bool {
    splitting_section(c).is_some()
}

/// The total group `E` of an extension in canonical form, with its
/// structure maps.
#[derive(Clone, Debug)]
pub struct ExtensionTotal {
    pub group: FgAbGroup,
    /// `ι: B → E`.
    pub inclusion: GroupHom,
    /// `π: E → A`.
    pub projection: GroupHom,
}

impl ExtensionTotal {
    /// The set-level section `s: A → E` sending `a` to the product of the
    /// adjoined generators, `Σ aⱼ·xⱼ`.  It satisfies `π ∘ s = id`, and its
    /// defect `δs` is the standard representative of the classified
    /// extension class.
    pub fn section(&self, a: &GroupElement) -> GroupElement {
        let base = self.projection.target();
        let a = base.reduce(a.coords());
        let fiber_gens = self.inclusion.source().gen_count();
        let mut ambient = vec![BigInt::zero(); fiber_gens];
        ambient.extend(a.coords().iter().cloned());
        self.group.project_ambient(&ambient)
    }
}

/// Builds `E` from a cocycle: one ambient generator per fiber generator
/// plus one generator `xⱼ` per base generator, with relations those of `B`
/// together with `nⱼ·xⱼ = ι(νⱼ)`.
pub fn total_group(c: &SymmetricCocycle) -> ExtensionTotal {
    let base = c.base();
    let fiber = c.fiber();
    let norms = c.norms();
    let fiber_gens = fiber.gen_count();
    let ambient = fiber_gens + base.gen_count();

    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in fiber.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); ambient];
        col[i] = d.clone();
        columns.push(col);
    }
    for (j, nu) in norms.iter().enumerate() {
        let mut col = Vec::with_capacity(ambient);
        col.extend(nu.coords().iter().map(|v| -v));
        for t in 0..base.gen_count() {
            col.push(if t == j { base.gen_order(j) } else { BigInt::zero() });
        }
        columns.push(col);
    }
    let group = crate::abelian::canonical_form(&IntMatrix::from_columns(ambient, &columns));

    let to = &group.basis_change().to_canonical;
    let inclusion_matrix =
        IntMatrix::from_fn(group.gen_count(), fiber_gens, |i, j| to.get(i, j).clone());
    let inclusion = GroupHom::new(fiber.clone(), group.clone(), inclusion_matrix)
        .expect("fiber relations are part of the total presentation");

    let mut images = vec![base.zero(); fiber_gens];
    for j in 0..base.gen_count() {
        images.push(base.generator(j));
    }
    let projection = hom_from_ambient_images(&group, base, &images)
        .expect("killing the fiber generators factors through the total group");

    ExtensionTotal { group, inclusion, projection }
}

/// All extensions of `g: B → T` over the total group of `c`, i.e. the homs
/// `h: E → T` with `h ∘ ι = g`.  The list is empty exactly when the
/// obstruction (the Yoneda pairing of `g` with the class of `c`) is
/// nonzero; otherwise its length is `|Hom(A, T)|`.
#[derive(Clone, Debug)]
pub struct HomExtensions {
    pub total: ExtensionTotal,
    pub homs: Vec<GroupHom>,
}

pub fn extend_hom(g: &GroupHom, c: &SymmetricCocycle) -> Result<HomExtensions> {
    if g.source() != c.fiber() {
        return Err(Error::GroupMismatch(format!(
            "hom source {} does not match cocycle fiber {}",
            g.source(),
            c.fiber()
        )));
    }
    let total = total_group(c);
    let base = c.base();
    let target = g.target();
    let norms = c.norms();

    // h is determined by its values yⱼ = h(xⱼ), subject to nⱼ·yⱼ = g(νⱼ).
    let mut candidates_per_gen: Vec<Vec<GroupElement>> = Vec::with_capacity(base.gen_count());
    for (j, nu) in norms.iter().enumerate() {
        let n_j = base.gen_order(j);
        let rhs = g.apply(nu);
        let coeff = IntMatrix::diagonal(&vec![n_j.clone(); target.gen_count()])
            .hstack(&target.relation_matrix());
        let particular = match crate::matrix::solve(&coeff, rhs.coords()) {
            Some(sol) => target.reduce(&sol[..target.gen_count()]),
            None => return Ok(HomExtensions { total, homs: vec![] }),
        };
        let (tor, incl) = torsion_part(target, &n_j);
        let candidates: Vec<GroupElement> = tor
            .elements()
            .expect("n-torsion subgroups are finite")
            .map(|t| target.add(&particular, &incl.apply(&t)))
            .collect();
        candidates_per_gen.push(candidates);
    }

    // Image of canonical generator t is Σ_a from_canonical[a][t] · image[a]
    // over ambient generators a; the fiber block of that sum is shared by
    // every lift, so it is hoisted out of the enumeration.
    let fiber_rank = c.fiber().gen_count();
    let from = &total.group.basis_change().from_canonical;
    let canon = total.group.gen_count();
    let fixed = IntMatrix::from_fn(target.gen_count(), canon, |i, t| {
        (0..fiber_rank).map(|a| from.get(a, t) * g.matrix().get(i, a)).sum()
    });

    let mut homs = Vec::new();
    let mut odometer = vec![0usize; candidates_per_gen.len()];
    loop {
        let matrix = IntMatrix::from_fn(target.gen_count(), canon, |i, t| {
            let mut v = fixed.get(i, t).clone();
            for (j, &pick) in odometer.iter().enumerate() {
                v += from.get(fiber_rank + j, t) * &candidates_per_gen[j][pick].coords()[i];
            }
            v
        });
        let h = GroupHom::new(total.group.clone(), target.clone(), matrix)
            .expect("the congruences nⱼ·yⱼ = g(νⱼ) are exactly well-definedness");
        homs.push(h);

        // Advance the odometer; stop after the last combination.
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                if let Some(first) = homs.first() {
                    let restricted = total
                        .inclusion
                        .then(first)
                        .expect("the fiber includes into the total group");
                    assert!(
                        restricted.matrix() == g.matrix(),
                        "every lift restricts to the prescribed homomorphism"
                    );
                }
                homs.sort_by(|x, y| {
                    let (mx, my) = (x.matrix(), y.matrix());
                    for i in 0..mx.rows() {
                        for j in 0..mx.cols() {
                            match mx.get(i, j).cmp(my.get(i, j)) {
                                core::cmp::Ordering::Equal => {}
                                other => return other,
                            }
                        }
                    }
                    core::cmp::Ordering::Equal
                });
                return Ok(HomExtensions { total, homs });
            }
            odometer[pos] += 1;
            if odometer[pos] < candidates_per_gen[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{direct_sum, hom_group, yoneda_pair};
    use crate::matrix::IntMatrix;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn zmod(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(big(n))
    }

    #[test]
    fn radical_cocycle_square_root_table() {
        let fiber = z();
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        let c = radical_cocycle(&fiber, &alpha, &big(2));
        let zero = c.base().zero();
        let one = c.base().element_from_i64(&[1]).unwrap();
        assert!(fiber.is_zero_element(&c.value(&zero, &zero)));
        assert!(fiber.is_zero_element(&c.value(&zero, &one)));
        assert!(fiber.is_zero_element(&c.value(&one, &zero)));
        assert_eq!(c.value(&one, &one), alpha);
    }

    #[test]
    fn radical_cocycle_cube_root_table() {
        let fiber = z();
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        let c = radical_cocycle(&fiber, &alpha, &big(3));
        let e = |i: i64| c.base().element_from_i64(&[i]).unwrap();
        // Carrying occurs exactly when representatives sum past n.
        for (i, j, expect_alpha) in [
            (0, 0, false),
            (0, 1, false),
            (1, 1, false),
            (1, 2, true),
            (2, 1, true),
            (2, 2, true),
        ] {
            let v = c.value(&e(i), &e(j));
            assert_eq!(!fiber.is_zero_element(&v), expect_alpha, "c({i},{j})");
            if expect_alpha {
                assert_eq!(v, alpha);
            }
        }
    }

    #[test]
    fn radical_cocycles_satisfy_the_laws() {
        let fibers = [
            z(),
            zmod(4),
            FgAbGroup::new(1, vec![big(2)]).unwrap(),
            FgAbGroup::new(0, vec![big(2), big(6)]).unwrap(),
        ];
        for fiber in &fibers {
            for n in [1i64, 2, 3, 4] {
                let alpha = fiber.reduce(&vec![big(1); fiber.gen_count()]);
                let c = radical_cocycle(fiber, &alpha, &big(n));
                assert!(c.violations().is_empty(), "fiber {fiber}, n = {n}");
            }
        }
    }

    #[test]
    fn validating_constructor_rejects_broken_tables() {
        let base = zmod(2);
        let fiber = zmod(2);
        let zero = fiber.zero();
        let one = fiber.element_from_i64(&[1]).unwrap();
        // Not normalized: c(0,0) = 1.
        let bad = SymmetricCocycle::new(
            base.clone(),
            fiber.clone(),
            vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
        );
        assert!(matches!(bad, Err(Error::InvalidCocycle(_))));
        // Not symmetric: c(0,1) ≠ c(1,0).
        let bad = SymmetricCocycle::new_unchecked(
            base.clone(),
            fiber.clone(),
            vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
        )
        .unwrap();
        assert!(!bad.violations().is_empty());
        // The good table passes.
        let good =
            SymmetricCocycle::new(base, fiber, vec![zero.clone(), zero.clone(), zero, one]);
        assert!(good.is_ok());
    }

    #[test]
    fn infinite_base_is_rejected() {
        let result = SymmetricCocycle::split(z(), zmod(2));
        assert!(matches!(result, Err(Error::InfiniteBase(_))));
    }

    #[test]
    fn radical_class_generates_ext_of_cyclic_by_free() {
        for n in [2i64, 3, 5, 8] {
            let fiber = z();
            let alpha = fiber.element_from_i64(&[1]).unwrap();
            let class = cocycle_to_class(&radical_cocycle(&fiber, &alpha, &big(n)));
            assert_eq!(class.group(), &zmod(n));
            let order = class.group().element_order(&class.element());
            assert_eq!(order, Some(big(n)), "the class generates Ext(Z/{n}, Z)");
        }
    }

    #[test]
    fn class_of_split_cocycle_is_zero() {
        let c = SymmetricCocycle::split(zmod(6), zmod(4)).unwrap();
        assert!(cocycle_to_class(&c).is_zero());
    }

    #[test]
    fn class_to_cocycle_of_the_z4_extension_generator() {
        // Ext(Z/2, Z/2) = Z/2; the nonzero class is the extension Z/4.
        let ext = ext_group(&zmod(2), &zmod(2));
        assert_eq!(ext.group, zmod(2));
        let class = ext.class(vec![big(1)]).unwrap();
        let c = class_to_cocycle(&class).unwrap();
        let one = zmod(2).element_from_i64(&[1]).unwrap();
        assert_eq!(c.value(&one, &one), one);
        assert_eq!(total_group(&c).group, zmod(4));
    }

    #[test]
    fn classification_roundtrips_on_every_class() {
        let bases = [zmod(4), FgAbGroup::new(0, vec![big(2), big(4)]).unwrap()];
        let fibers = [zmod(4), FgAbGroup::new(1, vec![big(6)]).unwrap()];
        for base in &bases {
            for fiber in &fibers {
                let ext = ext_group(base, fiber);
                for e in ext.group.elements().unwrap() {
                    let class = ext.class(e.coords().to_vec()).unwrap();
                    let c = class_to_cocycle(&class).unwrap();
                    assert!(c.violations().is_empty());
                    assert_eq!(cocycle_to_class(&c), class);
                }
            }
        }
    }

    #[test]
    fn baer_sum_is_addition_of_classes() {
        let base = FgAbGroup::new(0, vec![big(2), big(4)]).unwrap();
        let fiber = zmod(6);
        let ext = ext_group(&base, &fiber);
        let classes: Vec<ExtClass> = ext
            .group
            .elements()
            .unwrap()
            .map(|e| ext.class(e.coords().to_vec()).unwrap())
            .collect();
        for e1 in &classes {
            for e2 in &classes {
                let c1 = class_to_cocycle(e1).unwrap();
                let c2 = class_to_cocycle(e2).unwrap();
                let sum = c1.baer_sum(&c2).unwrap();
                assert_eq!(cocycle_to_class(&sum), e1.add(e2).unwrap());
                assert_eq!(cocycle_to_class(&c1.negate()), e1.neg());
            }
        }
    }

    #[test]
    fn baer_sum_with_split_preserves_class() {
        let fiber = z();
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        let c = radical_cocycle(&fiber, &alpha, &big(2));
        let split = SymmetricCocycle::split(c.base().clone(), fiber).unwrap();
        let sum = c.baer_sum(&split).unwrap();
        assert_eq!(cocycle_to_class(&sum), cocycle_to_class(&c));
    }

    #[test]
    fn n_fold_baer_sum_splits() {
        for n in [2i64, 3, 4] {
            let fiber = FgAbGroup::new(1, vec![big(6)]).unwrap();
            let alpha = fiber.element_from_i64(&[1, 1]).unwrap();
            let c = radical_cocycle(&fiber, &alpha, &big(n));
            let mut acc = SymmetricCocycle::split(c.base().clone(), c.fiber().clone()).unwrap();
            for _ in 0..n {
                acc = acc.baer_sum(&c).unwrap();
            }
            assert!(is_split(&acc), "n = {n}");
            assert!(cocycle_to_class(&acc).is_zero());
        }
    }

    // Units of Z[1/p] = {±1} × p^Z; the mod-4 character sends -1 ↦ 1 and
    // p ↦ (p mod 4 == 3).
    fn inverted_prime_units() -> FgAbGroup {
        FgAbGroup::new(1, vec![big(2)]).unwrap()
    }

    fn mod4_character(kappa_p: i64) -> GroupHom {
        GroupHom::new(
            inverted_prime_units(),
            zmod(2),
            IntMatrix::from_i64_rows(&[vec![1, kappa_p]]),
        )
        .unwrap()
    }

    #[test]
    fn pushforward_of_square_root_of_5_splits() {
        let units = inverted_prime_units();
        let five = units.element_from_i64(&[0, 1]).unwrap();
        let c = radical_cocycle(&units, &five, &big(2));
        let pushed = pushforward(&mod4_character(0), &c).unwrap();
        assert!(is_split(&pushed));
        assert!(cocycle_to_class(&pushed).is_zero());
    }

    #[test]
    fn pushforward_of_square_root_of_3_does_not_split() {
        let units = inverted_prime_units();
        let three = units.element_from_i64(&[0, 1]).unwrap();
        let c = radical_cocycle(&units, &three, &big(2));
        let pushed = pushforward(&mod4_character(1), &c).unwrap();
        assert!(!is_split(&pushed));
        assert!(!cocycle_to_class(&pushed).is_zero());
    }

    #[test]
    fn pushforward_commutes_with_classification() {
        let fiber = FgAbGroup::new(1, vec![big(4)]).unwrap();
        let target = zmod(8);
        let homs = hom_group(&fiber, &target).enumerate_homs().unwrap();
        let base = zmod(4);
        let ext = ext_group(&base, &fiber);
        for e in ext.group.elements().unwrap() {
            let class = ext.class(e.coords().to_vec()).unwrap();
            let c = class_to_cocycle(&class).unwrap();
            for g in &homs {
                let via_cocycle = cocycle_to_class(&pushforward(g, &c).unwrap());
                let via_pairing = yoneda_pair(g, &class).unwrap();
                assert_eq!(via_cocycle, via_pairing);
            }
        }
    }

    #[test]
    fn square_root_extension_of_free_group_does_not_split() {
        let fiber = z();
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        assert!(!is_split(&radical_cocycle(&fiber, &alpha, &big(2))));
    }

    #[test]
    fn nth_power_radical_splits_with_linear_section() {
        for n in [2i64, 3, 4] {
            let fiber = FgAbGroup::new(1, vec![big(2)]).unwrap();
            let beta = fiber.element_from_i64(&[1, 1]).unwrap();
            let alpha = fiber.smul(&big(n), &beta);
            let c = radical_cocycle(&fiber, &alpha, &big(n));
            let section = splitting_section(&c).expect("an n-th power has an n-th root");
            // s(i) = i·β is one valid section; the returned one must satisfy
            // the same defect equation.
            for i in 0..n {
                for j in 0..n {
                    let a = c.base().element_from_i64(&[i]).unwrap();
                    let b = c.base().element_from_i64(&[j]).unwrap();
                    let ia = c.base().element_index(&a).to_usize().unwrap();
                    let ib = c.base().element_index(&b).to_usize().unwrap();
                    let is = c.base().element_index(&c.base().add(&a, &b)).to_usize().unwrap();
                    let delta = fiber.sub(
                        &fiber.add(&section[ia], &section[ib]),
                        &section[is],
                    );
                    assert_eq!(delta, c.value(&a, &b));
                    // The hand-rolled section works as well.
                    let manual = |t: i64| fiber.smul(&big(t), &beta);
                    let manual_delta = fiber.sub(
                        &fiber.add(&manual(i), &manual(j)),
                        &manual((i + j).rem_euclid(n)),
                    );
                    assert_eq!(manual_delta, c.value(&a, &b));
                }
            }
        }
    }

    #[test]
    fn split_test_agrees_with_classification() {
        let base = FgAbGroup::new(0, vec![big(2), big(4)]).unwrap();
        let fiber = zmod(4);
        let ext = ext_group(&base, &fiber);
        for e in ext.group.elements().unwrap() {
            let class = ext.class(e.coords().to_vec()).unwrap();
            let c = class_to_cocycle(&class).unwrap();
            assert_eq!(is_split(&c), class.is_zero());
        }
    }

    #[test]
    fn total_group_of_square_root_of_a_free_generator() {
        let fiber = z();
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        let total = total_group(&radical_cocycle(&fiber, &alpha, &big(2)));
        // Adjoining x with x² = α to Z⟨α⟩ gives Z⟨x⟩ with α = 2x.
        assert_eq!(total.group, z());
        let image = total.inclusion.image_of_generator(0);
        assert_eq!(num_traits::Signed::abs(&image.coords()[0]), big(2));
    }

    #[test]
    fn total_group_of_the_mod2_generator_is_z4() {
        let fiber = zmod(2);
        let alpha = fiber.element_from_i64(&[1]).unwrap();
        let total = total_group(&radical_cocycle(&fiber, &alpha, &big(2)));
        assert_eq!(total.group, zmod(4));
    }

    #[test]
    fn total_group_of_split_cocycle_is_direct_sum() {
        let base = zmod(4);
        let fiber = FgAbGroup::new(1, vec![big(2)]).unwrap();
        let total = total_group(&SymmetricCocycle::split(base.clone(), fiber.clone()).unwrap());
        assert_eq!(total.group, direct_sum(&[&fiber, &base]));
    }

    #[test]
    fn total_group_order_is_fiber_order_times_base_order() {
        let fibers = [zmod(2), zmod(4), FgAbGroup::new(0, vec![big(2), big(6)]).unwrap()];
        for fiber in &fibers {
            for n in [2i64, 3, 4] {
                for alpha in fiber.elements().unwrap() {
                    let total = total_group(&radical_cocycle(fiber, &alpha, &big(n)));
                    assert_eq!(
                        total.group.order().unwrap(),
                        fiber.order().unwrap() * big(n)
                    );
                }
            }
        }
    }

    #[test]
    fn total_group_structure_maps_compose_correctly() {
        let fiber = FgAbGroup::new(1, vec![big(2)]).unwrap();
        let alpha = fiber.element_from_i64(&[1, 1]).unwrap();
        let c = radical_cocycle(&fiber, &alpha, &big(4));
        let total = total_group(&c);
        // π ∘ ι = 0.
        assert!(total.inclusion.then(&total.projection).unwrap().is_zero());
        // π ∘ s = id on every base element.
        for a in c.base().elements().unwrap() {
            assert_eq!(total.projection.apply(&total.section(&a)), a);
        }
        // The section's defect is a cocycle with the same class as c.
        let base_elements: Vec<GroupElement> = c.base().elements().unwrap().collect();
        let mut defect_table = Vec::new();
        for a in &base_elements {
            for b in &base_elements {
                let e = total.group.sub(
                    &total.group.add(&total.section(a), &total.section(b)),
                    &total.section(&c.base().add(a, b)),
                );
                let in_fiber = total.inclusion.preimage(&e).expect("defects land in the fiber");
                defect_table.push(in_fiber);
            }
        }
        let defect =
            SymmetricCocycle::new(c.base().clone(), fiber.clone(), defect_table).unwrap();
        assert_eq!(cocycle_to_class(&defect), cocycle_to_class(&c));
    }

    #[test]
    fn extending_the_character_over_a_split_root_gives_two_homs() {
        let units = inverted_prime_units();
        let five = units.element_from_i64(&[0, 1]).unwrap();
        let c = radical_cocycle(&units, &five, &big(2));
        let kappa = mod4_character(0);
        let result = extend_hom(&kappa, &c).unwrap();
        assert_eq!(result.homs.len(), 2);
        for h in &result.homs {
            assert_eq!(result.total.inclusion.then(h).unwrap(), kappa);
        }
        // The two extensions differ exactly on the adjoined generator.
        let x = result.total.section(&c.base().element_from_i64(&[1]).unwrap());
        let values: Vec<GroupElement> = result.homs.iter().map(|h| h.apply(&x)).collect();
        assert_ne!(values[0], values[1]);
    }

    #[test]
    fn obstructed_character_has_no_extension() {
        let units = inverted_prime_units();
        let three = units.element_from_i64(&[0, 1]).unwrap();
        let c = radical_cocycle(&units, &three, &big(2));
        let result = extend_hom(&mod4_character(1), &c).unwrap();
        assert!(result.homs.is_empty());
    }

    #[test]
    fn extensions_of_zero_are_pullbacks_from_the_base() {
        let fiber = FgAbGroup::new(1, vec![big(4)]).unwrap();
        let target = zmod(8);
        let base = zmod(4);
        let alpha = fiber.element_from_i64(&[1, 1]).unwrap();
        let c = radical_cocycle(&fiber, &alpha, &big(4));
        let result = extend_hom(&GroupHom::zero(fiber, target.clone()), &c).unwrap();
        let expected = hom_group(&base, &target).group.order().unwrap();
        assert_eq!(BigInt::from(result.homs.len()), expected);
        for h in &result.homs {
            assert!(result.total.inclusion.then(h).unwrap().is_zero());
        }
    }

    #[test]
    fn extension_count_matches_vanishing_of_the_pairing() {
        let units = inverted_prime_units();
        let target = zmod(2);
        let homs = hom_group(&units, &target).enumerate_homs().unwrap();
        for alpha in [
            units.element_from_i64(&[0, 1]).unwrap(),
            units.element_from_i64(&[1, 1]).unwrap(),
            units.element_from_i64(&[1, 0]).unwrap(),
            units.zero(),
        ] {
            let c = radical_cocycle(&units, &alpha, &big(2));
            let class = cocycle_to_class(&c);
            for g in &homs {
                let obstruction = yoneda_pair(g, &class).unwrap();
                let result = extend_hom(g, &c).unwrap();
                assert_eq!(obstruction.is_zero(), !result.homs.is_empty());
                if !result.homs.is_empty() {
                    let expected = hom_group(c.base(), &target).group.order().unwrap();
                    assert_eq!(BigInt::from(result.homs.len()), expected);
                }
            }
        }
    }
}
