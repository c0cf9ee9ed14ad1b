//! The Picard-side calculus: symmetric elements, strict-grading lifts,
//! grading-extension obstructions, and the torsion terms of the mod-`n`
//! mapping sequence.
//!
//! A grading of a category by a group `A` is, at the truncated level, a
//! homomorphism `ρ̄: A → P₀` into the Picard group.  Whether it lifts to a
//! *strict* grading is governed by the twist character `τ`: the composite
//! `τ ∘ ρ̄` must vanish, i.e. every image element must be symmetric.
//! Extending a grading along an extension `0 → P₀ → Γ → B → 0` (presented
//! by a symmetric cocycle valued in `P₀`) is governed by the Yoneda pairing
//! of `τ` with the extension class; the extensions of `τ`, when they exist,
//! differ by `Hom(B, P₁[2])`.

use alloc::format;

use num_bigint::BigInt;

use crate::abelian::{
    corestrict_to_torsion, ext_group, hom_group, quotient_mod, torsion_part, yoneda_pair,
    FgAbGroup, GroupElement, GroupHom,
};
use crate::extensions::{
    cocycle_to_class, extend_hom, total_group, ExtensionTotal, HomExtensions, SymmetricCocycle,
};
use crate::models::PicModel;
use crate::radicals::{ObstructionClass, ObstructionReport};
use crate::{Error, Result};

/// Whether `γ ∈ P₀` is symmetric, i.e. `τ(γ) = 0`.
pub fn is_symmetric(model: &PicModel, gamma: &GroupElement) -> bool {
    let gamma = model.pic.reduce(gamma.coords());
    model.p1.is_zero_element(&model.tau.apply(&gamma))
}

/// Obstruction for a grading `ρ̄: A → P₀` to lift to a strict grading: the
/// composite `τ ∘ ρ̄ ∈ Hom(A, P₁[2])`.  It vanishes exactly when every
/// image element is symmetric; the lifts then differ by classes in
/// `Ext(A, P₁)`, which is reported as the torsor.
pub fn strict_grading_obstruction(
    model: &PicModel,
    rho_bar: &GroupHom,
) -> Result<ObstructionReport> {
    if rho_bar.target() != &model.pic {
        return Err(Error::GroupMismatch(format!(
            "grading lands in {} but the Picard group is {}",
            rho_bar.target(),
            model.pic
        )));
    }
    let two = BigInt::from(2);
    let tau2 = corestrict_to_torsion(&model.tau, &two)?;
    let composite = rho_bar.then(&tau2)?;
    let vanishes = composite.is_zero();
    let obstruction = ObstructionClass::Hom(composite);
    Ok(if vanishes {
        let torsor = ext_group(rho_bar.source(), &model.p1).group;
        ObstructionReport::unobstructed(obstruction, torsor)
    } else {
        ObstructionReport::obstructed(obstruction)
    })
}

/// Obstruction to extending the twist character over the total group of a
/// grading extension `0 → P₀ → Γ → B → 0`: the Yoneda pairing of `τ` with
/// the class of the cocycle, in `Ext(B, P₁[2])`.  When it vanishes the
/// extensions of `τ` form a torsor under the difference group
/// `Hom(B, P₁[2])`.
pub fn grading_extension_obstruction(
    model: &PicModel,
    gamma_cocycle: &SymmetricCocycle,
) -> Result<ObstructionReport> {
    if gamma_cocycle.fiber() != &model.pic {
        return Err(Error::GroupMismatch(format!(
            "cocycle fiber {} does not match the Picard group {}",
            gamma_cocycle.fiber(),
            model.pic
        )));
    }
    let two = BigInt::from(2);
    let tau2 = corestrict_to_torsion(&model.tau, &two)?;
    let class = cocycle_to_class(gamma_cocycle);
    let paired = yoneda_pair(&tau2, &class)?;
    let vanishes = paired.is_zero();
    let obstruction = ObstructionClass::Ext(paired);
    Ok(if vanishes {
        let torsor = hom_group(gamma_cocycle.base(), tau2.target()).group;
        ObstructionReport::unobstructed(obstruction, torsor)
    } else {
        ObstructionReport::obstructed(obstruction)
    })
}

/// All extensions of the twist character over `Γ`: the homs `Γ → P₁[2]`
/// restricting to `τ` on `P₀`.  Empty exactly when
/// [`grading_extension_obstruction`] is nonzero; otherwise the count is
/// `|Hom(B, P₁[2])|`.
pub fn tau_extensions(
    model: &PicModel,
    gamma_cocycle: &SymmetricCocycle,
) -> Result<HomExtensions> {
    if gamma_cocycle.fiber() != &model.pic {
        return Err(Error::GroupMismatch(format!(
            "cocycle fiber {} does not match the Picard group {}",
            gamma_cocycle.fiber(),
            model.pic
        )));
    }
    let two = BigInt::from(2);
    let tau2 = corestrict_to_torsion(&model.tau, &two)?;
    extend_hom(&tau2, gamma_cocycle)
}

/// The outer terms of the mod-`n` mapping sequence
/// `0 → P₁/nP₁ → [S/n, pic] → P₀[n] → 0`: the quotient term and the
/// torsion term.  The middle group is not determined by these terms alone
/// and is not reported.
pub fn sn_torsion_terms(model: &PicModel, n: &BigInt) -> (FgAbGroup, FgAbGroup) {
    let (quotient, _) = quotient_mod(&model.p1, n);
    let (kernel, _) = torsion_part(&model.pic, n);
    (quotient, kernel)
}

/// The extended Picard group `Γ` of a grading extension, in canonical form
/// with the inclusion of `P₀` and the projection to `B`.
pub fn extended_pic(
    model: &PicModel,
    gamma_cocycle: &SymmetricCocycle,
) -> Result<ExtensionTotal> {
    if gamma_cocycle.fiber() != &model.pic {
        return Err(Error::GroupMismatch(format!(
            "cocycle fiber {} does not match the Picard group {}",
            gamma_cocycle.fiber(),
            model.pic
        )));
    }
    Ok(total_group(gamma_cocycle))
}
