//! Finitely generated abelian groups in canonical form, and the exact
//! functor calculus on them: Hom, Ext, torsion subgroups, quotients,
//! mapping-group tables, the Yoneda pairing, and pushouts.
//!
//! Canonical form is `(invariant_factors, free_rank)` with the invariant
//! factors a divisibility chain `d₁ | d₂ | …`, each ≥ 2.  This is a complete
//! isomorphism invariant.  Canonical generators are ordered torsion first
//! (in chain order), then free generators; element coordinates follow the
//! same order, with torsion coordinate `i` reduced into `[0, dᵢ)`.
//!
//! Groups built from a presentation keep the unimodular change of basis, so
//! elements given in ambient coordinates can be projected to canonical
//! coordinates and canonical generators lifted back — the plumbing every
//! extension and obstruction computation here relies on.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{smith_normal_form, solve, IntMatrix};
use crate::{Error, Result};

/// Change of basis between a defining presentation and canonical
/// coordinates.  `to_canonical` has one row per canonical generator and one
/// column per ambient generator; `from_canonical` is a right inverse giving
/// an integer representative of each canonical generator.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub ambient_rank: usize,
    pub to_canonical: IntMatrix,
    pub from_canonical: IntMatrix,
}

impl BasisChange {
    fn identity(rank: usize) -> Self {
        BasisChange {
            ambient_rank: rank,
            to_canonical: IntMatrix::identity(rank),
            from_canonical: IntMatrix::identity(rank),
        }
    }
}

/// A finitely generated abelian group in canonical form.
///
/// Equality compares canonical forms only (labels and presentation
/// provenance are metadata), so `==` means "isomorphic with identically
/// interpreted coordinates".
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    labels: Option<Vec<String>>,
    basis_change: Arc<BasisChange>,
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for FgAbGroup {}

/// An element in canonical coordinates of some [`FgAbGroup`].
///
/// Coordinates are ordered like the group's generators (torsion first, then
/// free); torsion coordinates are kept reduced.  Elements are plain
/// coordinate vectors — all arithmetic goes through the owning group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl FgAbGroup {
    /// Builds a group directly from canonical data.  The factors must be a
    /// divisibility chain of integers ≥ 2.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        for d in &invariant_factors {
            if *d < two {
                return Err(Error::InvalidInvariantFactors(format!(
                    "factor {d} is smaller than 2"
                )));
            }
        }
        for w in invariant_factors.windows(2) {
            if !w[1].mod_floor(&w[0]).is_zero() {
                return Err(Error::InvalidInvariantFactors(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let rank = invariant_factors.len() + free_rank;
        Ok(FgAbGroup {
            invariant_factors,
            free_rank,
            labels: None,
            basis_change: Arc::new(BasisChange::identity(rank)),
        })
    }

    pub fn trivial() -> Self {
        FgAbGroup::new(0, vec![]).expect("trivial group is canonical")
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, vec![]).expect("free group is canonical")
    }

    /// Cyclic group of order `n ≥ 1` (`n = 1` yields the trivial group).
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        assert!(n >= BigInt::one(), "cyclic order must be ≥ 1");
        if n.is_one() {
            FgAbGroup::trivial()
        } else {
            FgAbGroup::new(0, vec![n]).expect("single factor is canonical")
        }
    }

    /// Attaches display names to the canonical generators.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.gen_count() {
            return Err(Error::DimensionMismatch {
                expected: (self.gen_count(), 1),
                found: (labels.len(), 1),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, idx: usize) -> String {
        match &self.labels {
            Some(labels) => labels[idx].clone(),
            None => format!("g{idx}"),
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_gen_count(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn gen_count(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Order of the `idx`-th canonical generator; 0 encodes infinite order.
    pub fn gen_order(&self, idx: usize) -> BigInt {
        if idx < self.invariant_factors.len() {
            self.invariant_factors[idx].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn basis_change(&self) -> &BasisChange {
        &self.basis_change
    }

    pub fn is_trivial(&self) -> bool {
        self.gen_count() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.iter().product::<BigInt>().max(BigInt::one()))
    }

    /// Exponent (lcm of element orders); `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Number of elements killed by `n`, i.e. `|G[n]| = Π gcd(n, dᵢ)` — a
    /// convenient isomorphism fingerprint for finite groups.
    pub fn torsion_count(&self, n: &BigInt) -> BigInt {
        self.invariant_factors.iter().map(|d| n.gcd(d)).product::<BigInt>().max(BigInt::one())
    }

    /// Reduces a raw coordinate vector into canonical range.
    pub fn reduce(&self, raw: &[BigInt]) -> GroupElement {
        assert_eq!(raw.len(), self.gen_count(), "coordinate length must match generators");
        let coords = raw
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < self.invariant_factors.len() {
                    c.mod_floor(&self.invariant_factors[i])
                } else {
                    c.clone()
                }
            })
            .collect();
        GroupElement { coords }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.gen_count() {
            return Err(Error::DimensionMismatch {
                expected: (self.gen_count(), 1),
                found: (coords.len(), 1),
            });
        }
        Ok(self.reduce(&coords))
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![BigInt::zero(); self.gen_count()] }
    }

    pub fn generator(&self, idx: usize) -> GroupElement {
        assert!(idx < self.gen_count(), "generator index out of range");
        let mut coords = vec![BigInt::zero(); self.gen_count()];
        coords[idx] = BigInt::one();
        self.reduce(&coords)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let raw: Vec<BigInt> =
            a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.reduce(&raw)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let raw: Vec<BigInt> = a.coords.iter().map(|x| -x).collect();
        self.reduce(&raw)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn smul(&self, n: &BigInt, a: &GroupElement) -> GroupElement {
        let raw: Vec<BigInt> = a.coords.iter().map(|x| x * n).collect();
        self.reduce(&raw)
    }

    pub fn is_zero_element(&self, a: &GroupElement) -> bool {
        self.reduce(&a.coords).coords.iter().all(Zero::is_zero)
    }

    /// Order of an element; `None` when infinite.
    pub fn element_order(&self, a: &GroupElement) -> Option<BigInt> {
        let mut order = BigInt::one();
        for (i, c) in a.coords.iter().enumerate() {
            if i < self.invariant_factors.len() {
                let d = &self.invariant_factors[i];
                let g = c.gcd(d);
                order = order.lcm(&(d / g));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(order)
    }

    /// Mixed-radix index of an element of a finite group: the first torsion
    /// coordinate varies fastest.
    pub fn element_index(&self, a: &GroupElement) -> BigInt {
        assert!(self.is_finite(), "element indexing requires a finite group");
        let mut idx = BigInt::zero();
        let mut weight = BigInt::one();
        for (c, d) in a.coords.iter().zip(&self.invariant_factors) {
            idx += c * &weight;
            weight *= d;
        }
        idx
    }

    pub fn element_from_index(&self, idx: &BigInt) -> GroupElement {
        assert!(self.is_finite(), "element indexing requires a finite group");
        let mut rest = idx.clone();
        let mut coords = Vec::with_capacity(self.gen_count());
        for d in &self.invariant_factors {
            let (q, r) = rest.div_mod_floor(d);
            coords.push(r);
            rest = q;
        }
        GroupElement { coords }
    }

    /// Iterates all elements of a finite group in index order.
    pub fn elements(&self) -> Result<ElementIter<'_>> {
        if !self.is_finite() {
            return Err(Error::InfiniteEnumeration(format!(
                "cannot enumerate elements of {self}"
            )));
        }
        Ok(ElementIter { group: self, next: Some(self.zero()) })
    }

    /// Projects an ambient (presentation-level) integer vector to canonical
    /// coordinates.
    pub fn project_ambient(&self, ambient: &[BigInt]) -> GroupElement {
        assert_eq!(ambient.len(), self.basis_change.ambient_rank, "ambient coordinate length");
        self.reduce(&self.basis_change.to_canonical.mul_vec(ambient))
    }

    /// Integer representative of an element in ambient coordinates.
    pub fn ambient_representative(&self, a: &GroupElement) -> Vec<BigInt> {
        self.basis_change.from_canonical.mul_vec(&a.coords)
    }

    /// The defining relations of the canonical generators, as columns
    /// `dⱼ·eⱼ` (one per torsion generator).
    pub fn relation_matrix(&self) -> IntMatrix {
        let gens = self.gen_count();
        IntMatrix::from_fn(gens, self.torsion_gen_count(), |i, j| {
            if i == j { self.invariant_factors[j].clone() } else { BigInt::zero() }
        })
    }

    /// Coordinate tuple rendering, e.g. `(1, 0, 3)`; the trivial group's
    /// element renders as `0`.
    pub fn format_element(&self, a: &GroupElement) -> String {
        if a.coords.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = a.coords.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// Multiplicative rendering via generator labels, e.g. `-1·3^2` for the
    /// element with coordinates (1, 2) and labels `["-1", "3"]`.  A label
    /// literally equal to `-1` is folded into a leading sign.
    pub fn format_element_multiplicative(&self, a: &GroupElement) -> String {
        let mut negative = false;
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = self.label_of(i);
            if label == "-1" {
                if c.mod_floor(&BigInt::from(2)).is_one() {
                    negative = true;
                }
                continue;
            }
            if c.is_one() {
                parts.push(label);
            } else {
                parts.push(format!("{label}^{c}"));
            }
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("·") };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> =
            self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Iterator over all elements of a finite group.
pub struct ElementIter<'a> {
    group: &'a FgAbGroup,
    next: Option<GroupElement>,
}

impl Iterator for ElementIter<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        // Increment mixed-radix counter.
        let mut succ = current.clone();
        let mut carry = true;
        for (c, d) in succ.coords.iter_mut().zip(self.group.invariant_factors()) {
            if !carry {
                break;
            }
            *c += 1;
            if *c < *d {
                carry = false;
            } else {
                *c = BigInt::zero();
            }
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Canonical form of the cokernel of a presentation matrix: rows index the
/// ambient free group, columns are relations.  The change of basis between
/// ambient and canonical coordinates is recorded on the result.
pub fn canonical_form(presentation: &IntMatrix) -> FgAbGroup {
    let ambient = presentation.rows();
    let snf = smith_normal_form(presentation);
    let diag_len = min(ambient, presentation.cols());
    let entry = |i: usize| -> BigInt {
        if i < diag_len { snf.diagonal.get(i, i).clone() } else { BigInt::zero() }
    };
    let two = BigInt::from(2);
    let torsion_idx: Vec<usize> = (0..ambient).filter(|&i| entry(i) >= two).collect();
    let free_idx: Vec<usize> = (0..ambient).filter(|&i| entry(i).is_zero()).collect();
    let kept: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();

    let invariant_factors: Vec<BigInt> = torsion_idx.iter().map(|&i| entry(i)).collect();
    let to_canonical =
        IntMatrix::from_fn(kept.len(), ambient, |r, c| snf.left.get(kept[r], c).clone());
    let from_canonical =
        IntMatrix::from_fn(ambient, kept.len(), |r, c| snf.left_inverse.get(r, kept[c]).clone());

    FgAbGroup {
        invariant_factors,
        free_rank: free_idx.len(),
        labels: None,
        basis_change: Arc::new(BasisChange { ambient_rank: ambient, to_canonical, from_canonical }),
    }
}

/// Direct sum, with the result's ambient coordinates being the concatenated
/// canonical coordinates of the parts.
pub fn direct_sum(parts: &[&FgAbGroup]) -> FgAbGroup {
    let ambient: usize = parts.iter().map(|g| g.gen_count()).sum();
    let rel_cols: usize = parts.iter().map(|g| g.torsion_gen_count()).sum();
    let mut relations = IntMatrix::zero(ambient, rel_cols);
    let mut row_off = 0;
    let mut col_off = 0;
    for g in parts {
        for (j, d) in g.invariant_factors().iter().enumerate() {
            relations.set(row_off + j, col_off + j, d.clone());
        }
        row_off += g.gen_count();
        col_off += g.torsion_gen_count();
    }
    canonical_form(&relations)
}

/// A homomorphism between groups in canonical coordinates.  Column `j` of
/// the matrix is the image of the source's `j`-th canonical generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validated constructor: checks dimensions and that every source
    /// relation dies in the target.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let hom = GroupHom::new_unchecked(source, target, matrix)?;
        let violations = hom.well_defined_violations();
        if let Some(first) = violations.first() {
            return Err(Error::NotWellDefined(first.clone()));
        }
        Ok(hom)
    }

    /// Dimension-checked but not relation-checked; used to represent
    /// intentionally broken data for validators.  Entries are still reduced
    /// into canonical range.
    pub fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gen_count() || matrix.cols() != source.gen_count() {
            return Err(Error::DimensionMismatch {
                expected: (target.gen_count(), source.gen_count()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        let reduced = IntMatrix::from_fn(matrix.rows(), matrix.cols(), |i, j| {
            if i < target.torsion_gen_count() {
                matrix.get(i, j).mod_floor(&target.invariant_factors()[i])
            } else {
                matrix.get(i, j).clone()
            }
        });
        Ok(GroupHom { source, target, matrix: reduced })
    }

    pub fn from_images(
        source: FgAbGroup,
        target: FgAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.gen_count() {
            return Err(Error::DimensionMismatch {
                expected: (source.gen_count(), 1),
                found: (images.len(), 1),
            });
        }
        let matrix = IntMatrix::from_fn(target.gen_count(), images.len(), |i, j| {
            images[j].coords()[i].clone()
        });
        GroupHom::new(source, target, matrix)
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = IntMatrix::zero(target.gen_count(), source.gen_count());
        GroupHom { source, target, matrix }
    }

    pub fn identity(group: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.gen_count());
        GroupHom { source: group.clone(), target: group, matrix }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Relation violations, one message per failing source generator.
    pub fn well_defined_violations(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for j in 0..self.source.torsion_gen_count() {
            let d = &self.source.invariant_factors()[j];
            let image = self.target.reduce(&self.matrix.column(j));
            let killed = self.target.smul(d, &image);
            if !self.target.is_zero_element(&killed) {
                violations.push(format!(
                    "generator {j} has order {d} but its image {} is not killed by {d}",
                    self.target.format_element(&image)
                ));
            }
        }
        violations
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        self.target.reduce(&self.matrix.mul_vec(a.coords()))
    }

    /// Image of the `j`-th source generator.
    pub fn image_of_generator(&self, j: usize) -> GroupElement {
        self.target.reduce(&self.matrix.column(j))
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::GroupMismatch(format!(
                "cannot compose: intermediate groups {} and {} differ",
                self.target, other.source
            )));
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch("hom addition needs equal source and target".into()));
        }
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.neg())
            .expect("negative of a well-defined hom is well defined")
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.gen_count())
            .all(|j| self.target.is_zero_element(&self.image_of_generator(j)))
    }

    /// One preimage of `y`, or `None` when `y` is not in the image.
    pub fn preimage(&self, y: &GroupElement) -> Option<GroupElement> {
        let aug = self.matrix.hstack(&self.target.relation_matrix());
        solve(&aug, y.coords()).map(|x| self.source.reduce(&x[..self.source.gen_count()]))
    }
}

/// Builds the homomorphism induced on canonical generators by prescribed
/// images of the *ambient* generators of `domain`.  Fails when the ambient
/// images do not factor through the quotient.
pub fn hom_from_ambient_images(
    domain: &FgAbGroup,
    target: &FgAbGroup,
    ambient_images: &[GroupElement],
) -> Result<GroupHom> {
    let ambient = domain.basis_change().ambient_rank;
    if ambient_images.len() != ambient {
        return Err(Error::DimensionMismatch {
            expected: (ambient, 1),
            found: (ambient_images.len(), 1),
        });
    }
    // Image of canonical generator t = Σ_a from_canonical[a][t] · images[a].
    let from = &domain.basis_change().from_canonical;
    let matrix = IntMatrix::from_fn(target.gen_count(), domain.gen_count(), |i, t| {
        (0..ambient).map(|a| from.get(a, t) * &ambient_images[a].coords()[i]).sum()
    });
    let hom = GroupHom::new(domain.clone(), target.clone(), matrix)?;
    // The prescribed ambient images must agree with the induced map.
    for (a, prescribed) in ambient_images.iter().enumerate() {
        let mut ambient_coords = vec![BigInt::zero(); ambient];
        ambient_coords[a] = BigInt::one();
        let through = hom.apply(&domain.project_ambient(&ambient_coords));
        if through != target.reduce(prescribed.coords()) {
            return Err(Error::NotWellDefined(format!(
                "ambient generator {a} image does not factor through the canonical quotient"
            )));
        }
    }
    Ok(hom)
}

/// Corestricts `h` through the inclusion of the `n`-torsion subgroup of its
/// target.  Fails when some generator image is not killed by `n`.
pub fn corestrict_to_torsion(h: &GroupHom, n: &BigInt) -> Result<GroupHom> {
    let (sub, inclusion) = torsion_part(h.target(), n);
    let mut images = Vec::with_capacity(h.source().gen_count());
    for j in 0..h.source().gen_count() {
        let y = h.image_of_generator(j);
        if !h.target().is_zero_element(&h.target().smul(n, &y)) {
            return Err(Error::NotTwoTorsion(format!(
                "image {} of generator {j} is not killed by {n}",
                h.target().format_element(&y)
            )));
        }
        let pre = inclusion
            .preimage(&y)
            .expect("an element killed by n lies in the n-torsion subgroup");
        images.push(pre);
    }
    GroupHom::from_images(h.source().clone(), sub, &images)
}

/// `Hom(A, B)` in canonical form with an explicit generating set.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub group: FgAbGroup,
    pub basis: Vec<GroupHom>,
}

impl HomGroup {
    /// The homomorphism corresponding to an element of `group`.
    pub fn element_to_hom(&self, e: &GroupElement) -> GroupHom {
        let mut matrix = IntMatrix::zero(self.target.gen_count(), self.source.gen_count());
        for (s, coeff) in e.coords().iter().enumerate() {
            matrix = matrix.add(&self.basis[s].matrix().scale(coeff));
        }
        GroupHom::new(self.source.clone(), self.target.clone(), matrix)
            .expect("combinations of well-defined homs are well defined")
    }

    /// All homomorphisms, in element-index order.  Errors when `Hom(A, B)`
    /// is infinite.
    pub fn enumerate_homs(&self) -> Result<Vec<GroupHom>> {
        let elements = self.group.elements()?;
        Ok(elements.map(|e| self.element_to_hom(&e)).collect())
    }
}

/// Computes `Hom(A, B)` with explicit generators.
///
/// `Hom(⊕ᵢ Z/oᵢ, ⊕ⱼ Z/o'ⱼ)` decomposes into cyclic pieces: the (i,j) piece
/// has order `gcd(oᵢ, o'ⱼ)` (reading order 0 as `Z`) and is generated by
/// `genᵢ ↦ (o'ⱼ/gcd)·genⱼ`; pieces with torsion source and free target die.
pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    let mut elem_matrices: Vec<IntMatrix> = Vec::new();
    for i in 0..a.gen_count() {
        let o_src = a.gen_order(i);
        for j in 0..b.gen_count() {
            let o_tgt = b.gen_order(j);
            let (order, lambda) = if o_src.is_zero() {
                // Free source: Hom(Z, Z/m) = Z/m, Hom(Z, Z) = Z.
                (o_tgt.clone(), BigInt::one())
            } else if o_tgt.is_zero() {
                continue; // torsion into torsion-free
            } else {
                let g = o_src.gcd(&o_tgt);
                (g.clone(), &o_tgt / &g)
            };
            if order.is_one() {
                continue;
            }
            let mut m = IntMatrix::zero(b.gen_count(), a.gen_count());
            m.set(j, i, lambda);
            orders.push(order);
            elem_matrices.push(m);
        }
    }

    // Merge the cyclic pieces into canonical form; the merged group's
    // ambient coordinates index the pieces.
    let piece_count = orders.len();
    let torsion: Vec<usize> = (0..piece_count).filter(|&t| !orders[t].is_zero()).collect();
    let mut relations = IntMatrix::zero(piece_count, torsion.len());
    for (col, &t) in torsion.iter().enumerate() {
        relations.set(t, col, orders[t].clone());
    }
    let group = canonical_form(&relations);

    let basis: Vec<GroupHom> = (0..group.gen_count())
        .map(|s| {
            let rep = group.basis_change().from_canonical.column(s);
            let mut matrix = IntMatrix::zero(b.gen_count(), a.gen_count());
            for (t, coeff) in rep.iter().enumerate() {
                matrix = matrix.add(&elem_matrices[t].scale(coeff));
            }
            GroupHom::new(a.clone(), b.clone(), matrix)
                .expect("combinations of well-defined homs are well defined")
        })
        .collect();

    HomGroup { source: a.clone(), target: b.clone(), group, basis }
}

/// `n`-torsion subgroup `B[n]` with its inclusion.
pub fn torsion_part(b: &FgAbGroup, n: &BigInt) -> (FgAbGroup, GroupHom) {
    assert!(*n >= BigInt::one(), "torsion_part needs n ≥ 1");
    let two = BigInt::from(2);
    let mut factors = Vec::new();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in b.invariant_factors().iter().enumerate() {
        let g = d.gcd(n);
        if g < two {
            continue;
        }
        let mut col = vec![BigInt::zero(); b.gen_count()];
        col[i] = d / &g;
        factors.push(g);
        columns.push(col);
    }
    let sub = FgAbGroup::new(0, factors).expect("gcds of a chain form a chain");
    let matrix = IntMatrix::from_columns(b.gen_count(), &columns);
    let inclusion =
        GroupHom::new(sub.clone(), b.clone(), matrix).expect("torsion inclusion is well defined");
    (sub, inclusion)
}

/// Quotient `B/nB` with its projection.
pub fn quotient_mod(b: &FgAbGroup, n: &BigInt) -> (FgAbGroup, GroupHom) {
    assert!(*n >= BigInt::one(), "quotient_mod needs n ≥ 1");
    let gens = b.gen_count();
    let relations = b.relation_matrix().hstack(&IntMatrix::diagonal(&vec![n.clone(); gens]));
    let quotient = canonical_form(&relations);
    let projection = GroupHom::new(
        b.clone(),
        quotient.clone(),
        quotient.basis_change().to_canonical.clone(),
    )
    .expect("the projection kills nB and all relations of B");
    (quotient, projection)
}

/// `Ext(A, B)` with the coordinate system used by the extension calculus.
///
/// `Ext(A, B) = ⊕ⱼ B/nⱼB`, one factor per torsion generator of `A` (order
/// `nⱼ`); free generators contribute nothing.  The per-factor quotients and
/// the merged canonical form are both kept, so extension classes can be
/// converted to and from fiber-valued representatives reproducibly.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtGroup {
    pub base: FgAbGroup,
    pub fiber: FgAbGroup,
    pub group: FgAbGroup,
    factors: Vec<ExtFactor>,
}

#[derive(Clone, Debug, PartialEq)]
struct ExtFactor {
    order: BigInt,
    quotient: FgAbGroup,
    projection: GroupHom,
}

/// A class in `Ext(A, B)`, in the coordinates of [`ext_group`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExtClass {
    ext: ExtGroup,
    coords: Vec<BigInt>,
}

impl ExtClass {
    pub fn ext(&self) -> &ExtGroup {
        &self.ext
    }

    pub fn base(&self) -> &FgAbGroup {
        &self.ext.base
    }

    pub fn fiber(&self) -> &FgAbGroup {
        &self.ext.fiber
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.ext.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn element(&self) -> GroupElement {
        self.ext.group.reduce(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.ext.group.is_zero_element(&self.element())
    }

    pub fn add(&self, other: &ExtClass) -> Result<ExtClass> {
        if self.ext.base != other.ext.base || self.ext.fiber != other.ext.fiber {
            return Err(Error::GroupMismatch("Ext classes live in different groups".into()));
        }
        let sum = self.ext.group.add(&self.element(), &other.element());
        Ok(ExtClass { ext: self.ext.clone(), coords: sum.coords().to_vec() })
    }

    pub fn neg(&self) -> ExtClass {
        let n = self.ext.group.neg(&self.element());
        ExtClass { ext: self.ext.clone(), coords: n.coords().to_vec() }
    }
}

impl ExtGroup {
    pub fn zero_class(&self) -> ExtClass {
        ExtClass { ext: self.clone(), coords: vec![BigInt::zero(); self.group.gen_count()] }
    }

    pub fn class(&self, coords: Vec<BigInt>) -> Result<ExtClass> {
        let e = self.group.element(coords)?;
        Ok(ExtClass { ext: self.clone(), coords: e.coords().to_vec() })
    }

    /// Orders `nⱼ` of the torsion generators of the base.
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.factors.iter().map(|f| f.order.clone()).collect()
    }

    /// Class determined by fiber-valued representatives `βⱼ`, one per
    /// torsion generator of the base (the class of the cocycle
    /// `Σⱼ ⌊(aⱼ+bⱼ)/nⱼ⌋·βⱼ`).
    pub fn class_from_fiber_reps(&self, reps: &[GroupElement]) -> Result<ExtClass> {
        if reps.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: (self.factors.len(), 1),
                found: (reps.len(), 1),
            });
        }
        let mut ambient = Vec::with_capacity(self.group.basis_change().ambient_rank);
        for (factor, beta) in self.factors.iter().zip(reps) {
            ambient.extend(factor.projection.apply(beta).coords().iter().cloned());
        }
        let e = self.group.project_ambient(&ambient);
        Ok(ExtClass { ext: self.clone(), coords: e.coords().to_vec() })
    }

    /// Fiber-valued representatives `βⱼ` of a class, one per torsion
    /// generator of the base.
    pub fn fiber_representatives(&self, class: &ExtClass) -> Vec<GroupElement> {
        let ambient = self.group.ambient_representative(&class.element());
        let mut reps = Vec::with_capacity(self.factors.len());
        let mut offset = 0;
        for factor in &self.factors {
            let width = factor.quotient.gen_count();
            let slice = &ambient[offset..offset + width];
            offset += width;
            let raw = factor.quotient.basis_change().from_canonical.mul_vec(slice);
            reps.push(self.fiber.reduce(&raw));
        }
        reps
    }
}

/// Computes `Ext(A, B)` with reusable coordinates.
pub fn ext_group(a: &FgAbGroup, b: &FgAbGroup) -> ExtGroup {
    let factors: Vec<ExtFactor> = a
        .invariant_factors()
        .iter()
        .map(|n| {
            let (quotient, projection) = quotient_mod(b, n);
            ExtFactor { order: n.clone(), quotient, projection }
        })
        .collect();
    let quotients: Vec<&FgAbGroup> = factors.iter().map(|f| &f.quotient).collect();
    let group = direct_sum(&quotients);
    ExtGroup { base: a.clone(), fiber: b.clone(), group, factors }
}

/// The Yoneda pairing `Hom(B, T) × Ext(A, B) → Ext(A, T)`: pushes the
/// extension class forward along `g`.  It vanishes exactly when `g` extends
/// over the total group of the extension.
pub fn yoneda_pair(g: &GroupHom, e: &ExtClass) -> Result<ExtClass> {
    if g.source() != e.fiber() {
        return Err(Error::GroupMismatch(format!(
            "pairing source {} does not match Ext fiber {}",
            g.source(),
            e.fiber()
        )));
    }
    let target_ext = ext_group(e.base(), g.target());
    let reps: Vec<GroupElement> =
        e.ext().fiber_representatives(e).iter().map(|beta| g.apply(beta)).collect();
    target_ext.class_from_fiber_reps(&reps)
}

/// The mapping-group table `[A, Σᵏ B]` for `k = 0..=3`.
///
/// Degrees 0–2 are `Hom(A,B)`, `Ext(A,B)`, and `Hom(A,B[2])`.  Degree 3
/// sits in a short exact sequence between `Ext(A, B[2])` and `Hom(A, B/2)`;
/// the group is resolved only when one of the terms vanishes, and flagged
/// as undetermined otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingGroupReport {
    pub k: u8,
    /// The mapping group, when determined.
    pub group: Option<FgAbGroup>,
    /// Subobject term `Ext(A, B[2])` (k = 3 only).
    pub ext_term: Option<FgAbGroup>,
    /// Quotient term `Hom(A, B/2)` (k = 3 only).
    pub hom_term: Option<FgAbGroup>,
}

impl MappingGroupReport {
    pub fn is_determined(&self) -> bool {
        self.group.is_some()
    }
}

pub fn em_maps(a: &FgAbGroup, b: &FgAbGroup, k: u8) -> Result<MappingGroupReport> {
    let two = BigInt::from(2);
    let report = match k {
        0 => MappingGroupReport {
            k,
            group: Some(hom_group(a, b).group),
            ext_term: None,
            hom_term: None,
        },
        1 => MappingGroupReport {
            k,
            group: Some(ext_group(a, b).group),
            ext_term: None,
            hom_term: None,
        },
        2 => {
            let (b2, _) = torsion_part(b, &two);
            MappingGroupReport {
                k,
                group: Some(hom_group(a, &b2).group),
                ext_term: None,
                hom_term: None,
            }
        }
        3 => {
            let (b2, _) = torsion_part(b, &two);
            let (bmod2, _) = quotient_mod(b, &two);
            let ext_term = ext_group(a, &b2).group;
            let hom_term = hom_group(a, &bmod2).group;
            let group = if ext_term.is_trivial() {
                Some(hom_term.clone())
            } else if hom_term.is_trivial() {
                Some(ext_term.clone())
            } else {
                None // the sequence does not determine the middle group
            };
            MappingGroupReport { k, group, ext_term: Some(ext_term), hom_term: Some(hom_term) }
        }
        _ => return Err(Error::UnsupportedDegree(k)),
    };
    Ok(report)
}

/// Pushout `A ⊕_C B` of `f: C → A`, `g: C → B`, with the structure maps
/// from `A` and `B`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub group: FgAbGroup,
    pub from_left: GroupHom,
    pub from_right: GroupHom,
}

pub fn pushout(f: &GroupHom, g: &GroupHom) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::GroupMismatch(format!(
            "pushout needs a common source: {} vs {}",
            f.source(),
            g.source()
        )));
    }
    let a = f.target();
    let b = g.target();
    let ambient = a.gen_count() + b.gen_count();
    // Relations: those of A and B, plus (f(c), -g(c)) per generator of C.
    let c_gens = f.source().gen_count();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (j, d) in a.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); ambient];
        col[j] = d.clone();
        columns.push(col);
    }
    for (j, d) in b.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); ambient];
        col[a.gen_count() + j] = d.clone();
        columns.push(col);
    }
    for k in 0..c_gens {
        let mut col = Vec::with_capacity(ambient);
        col.extend(f.matrix().column(k));
        col.extend(g.matrix().column(k).iter().map(|v| -v));
        columns.push(col);
    }
    let group = canonical_form(&IntMatrix::from_columns(ambient, &columns));

    let to = &group.basis_change().to_canonical;
    let left_matrix =
        IntMatrix::from_fn(group.gen_count(), a.gen_count(), |i, j| to.get(i, j).clone());
    let right_matrix = IntMatrix::from_fn(group.gen_count(), b.gen_count(), |i, j| {
        to.get(i, a.gen_count() + j).clone()
    });
    let from_left = GroupHom::new(a.clone(), group.clone(), left_matrix)
        .expect("A's relations are included in the pushout presentation");
    let from_right = GroupHom::new(b.clone(), group.clone(), right_matrix)
        .expect("B's relations are included in the pushout presentation");
    Ok(Pushout { group, from_left, from_right })
}
