//! Adjoining `n`-th roots of units: obstructions, lifts, and the resulting
//! twisted group algebras.
//!
//! Given a unit model `(U₀, K₁, κ)` and a unit `α`, adjoining a formal
//! `n`-th root `x` of `α` extends the unit group by the carrying cocycle of
//! `x`.  The character `κ` must come along: the obstruction to extending it
//! is the Yoneda pairing of `κ` (corestricted to `K₁[2]`) with the class of
//! the carrying cocycle in `Ext(Z/n, U₀)`.  When the obstruction vanishes
//! the extensions form a torsor under `Hom(Z/n, K₁[2])`, and each lift is a
//! concrete character on the extended unit group.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{
    corestrict_to_torsion, hom_from_ambient_images, hom_group, yoneda_pair, ExtClass, FgAbGroup,
    GroupElement, GroupHom,
};
use crate::extensions::{
    cocycle_to_class, extend_hom, radical_cocycle, total_group, ExtensionTotal, SymmetricCocycle,
};
use crate::models::UnitModel;
use crate::{Error, Result};

/// The value of an obstruction, in whichever group it naturally lives.
#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionClass {
    /// An element of a homotopy group (e.g. `κ(α) ∈ K₁`).
    Element { group: FgAbGroup, value: GroupElement },
    /// A class in an Ext group.
    Ext(ExtClass),
    /// A homomorphism (e.g. a composite character that should be zero).
    Hom(GroupHom),
}

impl ObstructionClass {
    pub fn vanishes(&self) -> bool {
        match self {
            ObstructionClass::Element { group, value } => group.is_zero_element(value),
            ObstructionClass::Ext(class) => class.is_zero(),
            ObstructionClass::Hom(hom) => hom.is_zero(),
        }
    }

    /// The group the obstruction lives in.
    pub fn ambient(&self) -> FgAbGroup {
        match self {
            ObstructionClass::Element { group, .. } => group.clone(),
            ObstructionClass::Ext(class) => class.group().clone(),
            ObstructionClass::Hom(hom) => hom_group(hom.source(), hom.target()).group,
        }
    }
}

impl fmt::Display for ObstructionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionClass::Element { group, value } => {
                write!(f, "{} in {}", group.format_element(value), group)
            }
            ObstructionClass::Ext(class) => {
                write!(
                    f,
                    "{} in Ext({}, {}) = {}",
                    class.group().format_element(&class.element()),
                    class.base(),
                    class.fiber(),
                    class.group()
                )
            }
            ObstructionClass::Hom(hom) => {
                write!(f, "a homomorphism {} → {}", hom.source(), hom.target())
            }
        }
    }
}

/// Outcome of an obstruction computation: the class itself, whether it
/// vanishes, and — when it does — the torsor the set of lifts forms.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub obstruction: ObstructionClass,
    pub vanishes: bool,
    /// Group acting simply transitively on the lifts (`None` when obstructed).
    pub torsor: Option<FgAbGroup>,
    /// Number of lifts: `0` when obstructed, the torsor order when finite.
    pub lift_count: Option<BigInt>,
}

impl ObstructionReport {
    /// A nonzero obstruction: no lifts exist.
    pub fn obstructed(obstruction: ObstructionClass) -> Self {
        ObstructionReport {
            obstruction,
            vanishes: false,
            torsor: None,
            lift_count: Some(BigInt::zero()),
        }
    }

    /// A vanishing obstruction whose lifts form a torsor under `torsor`;
    /// the lift count is its order when finite.
    pub fn unobstructed(obstruction: ObstructionClass, torsor: FgAbGroup) -> Self {
        let lift_count = torsor.order();
        ObstructionReport { obstruction, vanishes: true, torsor: Some(torsor), lift_count }
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vanishes {
            write!(f, "vanishes; lifts form a torsor under ")?;
            match &self.torsor {
                Some(t) => write!(f, "{t}"),
                None => write!(f, "an unnamed group"),
            }
        } else {
            write!(f, "nonzero: {}", self.obstruction)
        }
    }
}

fn check_unit(model: &UnitModel, alpha: &GroupElement) -> Result<GroupElement> {
    if alpha.coords().len() != model.units.gen_count() {
        return Err(Error::DimensionMismatch {
            expected: (model.units.gen_count(), 1),
            found: (alpha.coords().len(), 1),
        });
    }
    Ok(model.units.reduce(alpha.coords()))
}


/// Obstruction for `α` to be a strict unit: the element `κ(α) ∈ K₁`.  When
/// it vanishes the strict structure is unique (the relevant Ext group over
/// a free base is zero), so the torsor is trivial.
pub fn strict_unit_obstruction(
    model: &UnitModel,
    alpha: &GroupElement,
) -> Result<ObstructionReport> {
    let alpha = check_unit(model, alpha)?;
    let value = model.kappa.apply(&alpha);
    let obstruction = ObstructionClass::Element { group: model.k1.clone(), value };
    Ok(if obstruction.vanishes() {
        ObstructionReport::unobstructed(obstruction, FgAbGroup::trivial())
    } else {
        ObstructionReport::obstructed(obstruction)
    })
}

/// Obstruction to adjoining a formal `n`-th root of `α`: the pairing of
/// the corestricted character with the class of the carrying cocycle,
/// landing in `Ext(Z/n, K₁[2])`.  When it vanishes the lifts form a torsor
/// under `Hom(Z/n, K₁[2])`.
pub fn formal_root_obstruction(
    model: &UnitModel,
    alpha: &GroupElement,
    n: &BigInt,
) -> Result<ObstructionReport> {
    let alpha = check_unit(model, alpha)?;
    let two = BigInt::from(2);
    let kappa2 = corestrict_to_torsion(&model.kappa, &two)?;
    let cocycle = radical_cocycle(&model.units, &alpha, n);
    let class = cocycle_to_class(&cocycle);
    let paired = yoneda_pair(&kappa2, &class)?;
    let vanishes = paired.is_zero();
    let base = cocycle.base().clone();
    let obstruction = ObstructionClass::Ext(paired);
    Ok(if vanishes {
        let torsor = hom_group(&base, kappa2.target()).group;
        ObstructionReport::unobstructed(obstruction, torsor)
    } else {
        ObstructionReport::obstructed(obstruction)
    })
}

/// One extension of the character over the root-adjoined unit group.
#[derive(Clone, Debug)]
pub struct RootLift {
    /// The extended character on the total group.
    pub hom: GroupHom,
    /// Its value on the adjoined root `x`.
    pub root_value: GroupElement,
}

/// All character extensions over the root-adjoined unit group.
#[derive(Clone, Debug)]
pub struct RootLifts {
    /// The extended unit group `U₀(x)` with its structure maps.
    pub total: ExtensionTotal,
    pub lifts: Vec<RootLift>,
}

/// Enumerates the extensions of the corestricted character over the group
/// obtained by adjoining an `n`-th root of `α`.  Empty exactly when
/// [`formal_root_obstruction`] is nonzero; otherwise the length is
/// `|Hom(Z/n, K₁[2])|`.
pub fn formal_root_lifts(
    model: &UnitModel,
    alpha: &GroupElement,
    n: &BigInt,
) -> Result<RootLifts> {
    let alpha = check_unit(model, alpha)?;
    let two = BigInt::from(2);
    let kappa2 = corestrict_to_torsion(&model.kappa, &two)?;
    let cocycle = radical_cocycle(&model.units, &alpha, n);
    let extensions = extend_hom(&kappa2, &cocycle)?;
    let root = root_element(&extensions.total, &cocycle);
    let lifts = extensions
        .homs
        .into_iter()
        .map(|hom| {
            let root_value = hom.apply(&root);
            RootLift { hom, root_value }
        })
        .collect();
    Ok(RootLifts { total: extensions.total, lifts })
}

/// The adjoined root `x` inside the total group: the section of the base
/// generator (zero when `n = 1` and nothing was adjoined).
fn root_element(total: &ExtensionTotal, cocycle: &SymmetricCocycle) -> GroupElement {
    let base = cocycle.base();
    if base.is_trivial() {
        total.group.zero()
    } else {
        total.section(&base.generator(0))
    }
}

/// The canonical Bockstein witness: the unique extension of the character
/// that kills the adjoined root.  It exists exactly when `α` is a strict
/// unit, i.e. `κ(α) = 0` on the nose.
pub fn bockstein_root(
    model: &UnitModel,
    alpha: &GroupElement,
    n: &BigInt,
) -> Result<RootLift> {
    let alpha = check_unit(model, alpha)?;
    let kappa_alpha = model.kappa.apply(&alpha);
    if !model.k1.is_zero_element(&kappa_alpha) {
        return Err(Error::NotStrictUnit(format!(
            "κ(α) = {} ≠ 0, so the canonical root witness does not exist",
            model.k1.format_element(&kappa_alpha)
        )));
    }
    let two = BigInt::from(2);
    let kappa2 = corestrict_to_torsion(&model.kappa, &two)?;
    let cocycle = radical_cocycle(&model.units, &alpha, n);
    let total = total_group(&cocycle);

    // Extend by zero on the adjoined generators; well defined because the
    // norms of the carrying cocycle are powers of α and κ₂(α) = 0.
    let target = kappa2.target().clone();
    let mut images: Vec<GroupElement> =
        (0..model.units.gen_count()).map(|u| kappa2.image_of_generator(u)).collect();
    for _ in 0..cocycle.base().gen_count() {
        images.push(target.zero());
    }
    let hom = hom_from_ambient_images(&total.group, &target, &images)?;
    let root = root_element(&total, &cocycle);
    let root_value = hom.apply(&root);
    debug_assert!(target.is_zero_element(&root_value));
    Ok(RootLift { hom, root_value })
}

/// A twisted group algebra: free module on the elements of a finite
/// grading group, with basis products twisted by units according to a
/// symmetric carrying cocycle.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    grading: FgAbGroup,
    units: FgAbGroup,
    cocycle: SymmetricCocycle,
    basis_labels: Vec<String>,
}

/// One entry of the multiplication table: `basis[left] · basis[right] =
/// twist · basis[result]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraProduct {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub twist: GroupElement,
}

impl TwistedGroupAlgebra {
    /// Builds the algebra of a carrying cocycle, labeling the basis by the
    /// grading-group elements (`1` for zero, `e(coords)` otherwise).
    pub fn new(cocycle: &SymmetricCocycle) -> Result<Self> {
        let grading = cocycle.base().clone();
        let size = grading
            .order()
            .and_then(|o| o.to_usize())
            .ok_or_else(|| Error::InfiniteBase(format!("algebra basis needs a finite grading")))?;
        let labels = (0..size)
            .map(|i| {
                let e = grading.element_from_index(&BigInt::from(i));
                if grading.is_zero_element(&e) {
                    "1".to_string()
                } else {
                    format!("e{}", grading.format_element(&e))
                }
            })
            .collect();
        Ok(TwistedGroupAlgebra {
            grading,
            units: cocycle.fiber().clone(),
            cocycle: cocycle.clone(),
            basis_labels: labels,
        })
    }

    pub fn with_basis_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: (self.dimension(), 1),
                found: (labels.len(), 1),
            });
        }
        self.basis_labels = labels;
        Ok(self)
    }

    pub fn grading(&self) -> &FgAbGroup {
        &self.grading
    }

    pub fn units(&self) -> &FgAbGroup {
        &self.units
    }

    pub fn cocycle(&self) -> &SymmetricCocycle {
        &self.cocycle
    }

    pub fn dimension(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn product(&self, left: usize, right: usize) -> AlgebraProduct {
        let a = self.grading.element_from_index(&BigInt::from(left));
        let b = self.grading.element_from_index(&BigInt::from(right));
        let sum = self.grading.add(&a, &b);
        let result = self.grading.element_index(&sum).to_usize().expect("finite basis");
        AlgebraProduct { left, right, result, twist: self.cocycle.value(&a, &b) }
    }

    /// The full multiplication table in row-major basis order.
    pub fn product_table(&self) -> Vec<AlgebraProduct> {
        let n = self.dimension();
        (0..n).flat_map(|i| (0..n).map(move |j| self.product(i, j))).collect()
    }

    /// Renders one product like `x^2·x^3 = 5·x`, folding trivial twists
    /// and the unit basis element away.
    pub fn render_product(&self, p: &AlgebraProduct) -> String {
        let twist = self.units.format_element_multiplicative(&p.twist);
        let result = self.basis_labels[p.result].clone();
        let rhs = match (twist.as_str(), result.as_str()) {
            ("1", r) => r.to_string(),
            (t, "1") => t.to_string(),
            (t, r) => format!("{t}·{r}"),
        };
        format!("{}·{} = {}", self.basis_labels[p.left], self.basis_labels[p.right], rhs)
    }
}

/// The twisted group algebra of an arbitrary carrying cocycle valued in a
/// unit group.
pub fn twisted_group_algebra(cocycle: &SymmetricCocycle) -> Result<TwistedGroupAlgebra> {
    TwistedGroupAlgebra::new(cocycle)
}

/// Adjoins a formal `n`-th root `x` of `α` to the model's unit group,
/// producing the algebra with basis `1, x, …, x^{n-1}` and products
/// `xⁱ·xʲ = α^{⌊(i+j)/n⌋}·x^{(i+j) mod n}`.  Refuses with
/// [`Error::Obstructed`] when the character does not extend.
pub fn adjoin_root(
    model: &UnitModel,
    alpha: &GroupElement,
    n: &BigInt,
) -> Result<TwistedGroupAlgebra> {
    let alpha = check_unit(model, alpha)?;
    let report = formal_root_obstruction(model, &alpha, n)?;
    if !report.vanishes {
        return Err(Error::Obstructed(Box::new(report)));
    }
    let cocycle = radical_cocycle(&model.units, &alpha, n);
    let size = n.to_usize().ok_or_else(|| {
        Error::InfiniteBase("root index too large for an explicit basis".into())
    })?;
    let labels = (0..size)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            i => format!("x^{i}"),
        })
        .collect();
    TwistedGroupAlgebra::new(&cocycle)?.with_basis_labels(labels)
}
