//! Two-stage models: a unit group with its connecting character, and a
//! Picard group with its twist character.
//!
//! A [`UnitModel`] is the data `(U₀, K₁, κ)` of a 1-truncated unit
//! spectrum: the unit group, the first homotopy group, and the connecting
//! homomorphism, which must be killed by 2.  A [`PicModel`] is the
//! analogous data `(P₀, P₁, τ)` one level up.  Both come with honest
//! validators that report every violated law, plus ready-made instances:
//! the sphere with a set of odd primes inverted, and the Picard data of a
//! local ring.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{FgAbGroup, GroupElement, GroupHom};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// Unit-group data `(U₀, K₁, κ)` with `2κ = 0`.
#[derive(Clone, Debug)]
pub struct UnitModel {
    pub units: FgAbGroup,
    pub k1: FgAbGroup,
    pub kappa: GroupHom,
}

/// Picard-group data `(P₀, P₁, τ)` with `2τ = 0`.
#[derive(Clone, Debug)]
pub struct PicModel {
    pub pic: FgAbGroup,
    pub p1: FgAbGroup,
    pub tau: GroupHom,
}

/// Outcome of validating a model: empty means every law holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelReport {
    pub violations: Vec<String>,
}

impl ModelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn validate_connecting(
    name: &str,
    pi0: &FgAbGroup,
    pi1: &FgAbGroup,
    map: &GroupHom,
) -> ModelReport {
    let mut violations = Vec::new();
    if map.source() != pi0 {
        violations.push(format!(
            "{name} is defined on {} but the degree-0 group is {pi0}",
            map.source()
        ));
    }
    if map.target() != pi1 {
        violations.push(format!(
            "{name} lands in {} but the degree-1 group is {pi1}",
            map.target()
        ));
    }
    for v in map.well_defined_violations() {
        violations.push(format!("{name} is not well defined: {v}"));
    }
    let two = BigInt::from(2);
    for j in 0..map.source().gen_count() {
        let image = map.image_of_generator(j);
        let doubled = map.target().smul(&two, &image);
        if !map.target().is_zero_element(&doubled) {
            violations.push(format!(
                "{name}(generator {j}) = {} is not killed by 2",
                map.target().format_element(&image)
            ));
        }
    }
    ModelReport { violations }
}

impl UnitModel {
    pub fn new(units: FgAbGroup, k1: FgAbGroup, kappa: GroupHom) -> Result<Self> {
        let model = UnitModel::new_unchecked(units, k1, kappa);
        let report = model.validate();
        if let Some(first) = report.violations.first() {
            return Err(Error::InvalidModel(first.clone()));
        }
        Ok(model)
    }

    /// No validation; exists so broken data can be fed to [`Self::validate`].
    pub fn new_unchecked(units: FgAbGroup, k1: FgAbGroup, kappa: GroupHom) -> Self {
        UnitModel { units, k1, kappa }
    }

    pub fn validate(&self) -> ModelReport {
        validate_connecting("κ", &self.units, &self.k1, &self.kappa)
    }
}

impl PicModel {
    pub fn new(pic: FgAbGroup, p1: FgAbGroup, tau: GroupHom) -> Result<Self> {
        let model = PicModel::new_unchecked(pic, p1, tau);
        let report = model.validate();
        if let Some(first) = report.violations.first() {
            return Err(Error::InvalidModel(first.clone()));
        }
        Ok(model)
    }

    /// No validation; exists so broken data can be fed to [`Self::validate`].
    pub fn new_unchecked(pic: FgAbGroup, p1: FgAbGroup, tau: GroupHom) -> Self {
        PicModel { pic, p1, tau }
    }

    pub fn validate(&self) -> ModelReport {
        validate_connecting("τ", &self.pic, &self.p1, &self.tau)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all `u64`.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Unit model of the 1-truncated sphere with a finite set of odd primes
/// inverted: `U₀ = {±1} × Πₚ p^Z` (generators labeled `-1` and by each
/// prime), `K₁ = Z/2`, and `κ` the mod-4 character: `κ(-1) = 1`,
/// `κ(p) = 1` exactly when `p ≡ 3 (mod 4)`.
pub fn local_truncated_sphere_model(primes: &[BigInt]) -> Result<UnitModel> {
    let mut sorted = primes.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidModel(format!("duplicate prime {}", w[0])));
        }
    }
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    for p in &sorted {
        let small = p.to_u64().ok_or_else(|| {
            Error::InvalidModel(format!("{p} is too large for primality verification"))
        })?;
        if !is_prime_u64(small) {
            return Err(Error::InvalidModel(format!("{p} is not prime")));
        }
        if small == 2 {
            return Err(Error::InvalidModel("2 cannot be inverted in a 2-local model".into()));
        }
    }

    let mut labels = vec!["-1".to_string()];
    labels.extend(sorted.iter().map(|p| p.to_string()));
    let units = FgAbGroup::new(sorted.len(), vec![BigInt::from(2)])?.with_labels(labels)?;
    let k1 = FgAbGroup::cyclic(2);
    let kappa_row: Vec<BigInt> = core::iter::once(BigInt::one())
        .chain(sorted.iter().map(|p| {
            if p.mod_floor(&four) == three {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }))
        .collect();
    let kappa = GroupHom::new(
        units.clone(),
        k1.clone(),
        IntMatrix::from_rows(vec![kappa_row]),
    )?;
    UnitModel::new(units, k1, kappa)
}

/// Expresses the rational `numerator/denominator` as an element of a
/// sphere model's unit group, i.e. factors it as `±Π p^e` over the
/// inverted primes.  Fails when the fraction is zero or has a prime factor
/// outside the model.
pub fn sphere_unit_element(
    model: &UnitModel,
    numerator: &BigInt,
    denominator: &BigInt,
) -> Result<GroupElement> {
    if numerator.is_zero() || denominator.is_zero() {
        return Err(Error::NotSUnit("zero is not a unit".into()));
    }
    let labels = model.units.labels().ok_or_else(|| {
        Error::InvalidModel("unit factorization needs labeled generators".into())
    })?;
    let mut primes: Vec<BigInt> = Vec::new();
    for label in &labels[1..] {
        let p: BigInt = label.parse().map_err(|_| {
            Error::InvalidModel(format!("generator label {label} is not an integer prime"))
        })?;
        primes.push(p);
    }

    let negative = (numerator.sign() == num_bigint::Sign::Minus)
        != (denominator.sign() == num_bigint::Sign::Minus);
    let mut coords = vec![BigInt::zero(); model.units.gen_count()];
    coords[0] = if negative { BigInt::one() } else { BigInt::zero() };

    let mut strip = |value: &BigInt, sign: i64| -> BigInt {
        let mut rest = value.abs();
        for (i, p) in primes.iter().enumerate() {
            while rest.mod_floor(p).is_zero() {
                rest /= p;
                coords[1 + i] += sign;
            }
        }
        rest
    };
    let rest_num = strip(numerator, 1);
    let rest_den = strip(denominator, -1);
    if !rest_num.is_one() || !rest_den.is_one() {
        let leftover = if rest_num.is_one() { rest_den } else { rest_num };
        return Err(Error::NotSUnit(format!(
            "{numerator}/{denominator} has the factor {leftover} outside the inverted primes"
        )));
    }
    model.units.element(coords)
}

/// Picard model of a local ring: `P₀ = Z⟨Σ⟩` (labeled by the suspension),
/// `P₁` the given unit group, and `τ` sending `Σ` to the class of `-1`.
/// In residue characteristic 2 that class is zero and `τ = 0`.
pub fn local_ring_pic_model(units: &FgAbGroup, minus_one: &GroupElement) -> Result<PicModel> {
    let two = BigInt::from(2);
    let doubled = units.smul(&two, minus_one);
    if !units.is_zero_element(&doubled) {
        return Err(Error::InvalidModel(format!(
            "the class of -1 must square to 1, got {}",
            units.format_element(minus_one)
        )));
    }
    let pic = FgAbGroup::free(1).with_labels(vec!["Σ".to_string()])?;
    let tau_matrix = IntMatrix::from_fn(units.gen_count(), 1, |i, _| minus_one.coords()[i].clone());
    let tau = GroupHom::new(pic.clone(), units.clone(), tau_matrix)?;
    PicModel::new(pic, units.clone(), tau)
}
