//! Inline expression parsers for command-line flags: group expressions like
//! `Z^2+Z/4`, coordinate lists, row-major matrices, model shorthands, and
//! unit expressions for sphere-style models.

use anyhow::{anyhow, bail, Result};
use num_bigint::BigInt;
use num_traits::One;
use surd::abelian::{direct_sum, FgAbGroup, GroupElement};
use surd::matrix::IntMatrix;
use surd::models::{
    local_ring_pic_model, local_truncated_sphere_model, sphere_unit_element, PicModel, UnitModel,
};

use crate::format::{parse_bigint, Workspace};

/// Parses `0`, `Z`, `Z^k`, `Z/n`, and `+`-separated sums of those, e.g.
/// `Z^2+Z/2+Z/4`.  The result is in canonical form, so summand order does
/// not matter.
pub fn group_expr(s: &str) -> Result<FgAbGroup> {
    let mut parts = Vec::new();
    for raw in s.split('+') {
        let term = raw.trim();
        if term == "0" {
            parts.push(FgAbGroup::trivial());
        } else if term == "Z" {
            parts.push(FgAbGroup::free(1));
        } else if let Some(rank) = term.strip_prefix("Z^") {
            let rank: usize =
                rank.trim().parse().map_err(|_| anyhow!("bad free rank in {term:?}"))?;
            parts.push(FgAbGroup::free(rank));
        } else if let Some(modulus) = term.strip_prefix("Z/") {
            let n = parse_bigint(modulus)?;
            if n < BigInt::from(2) {
                bail!("cyclic modulus must be at least 2, got {n}");
            }
            parts.push(FgAbGroup::new(0, vec![n])?);
        } else {
            bail!("cannot parse group term {term:?} (expected 0, Z, Z^k, or Z/n)");
        }
    }
    let refs: Vec<&FgAbGroup> = parts.iter().collect();
    Ok(direct_sum(&refs))
}

/// Resolves a group flag: a name from the problem file if one matches,
/// otherwise an inline expression.
pub fn group_flag(s: &str, ws: &Workspace) -> Result<FgAbGroup> {
    if let Some(g) = ws.groups.get(s) {
        return Ok(g.clone());
    }
    group_expr(s)
}

/// Parses `1,0,-3` into coordinates; the empty string is the empty vector.
pub fn coords(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_bigint).collect()
}

/// Parses a row-major matrix, rows separated by `;`, like `1,2;3,4`, and
/// checks it against the expected shape.
pub fn matrix(s: &str, rows: usize, cols: usize) -> Result<IntMatrix> {
    let mut parsed: Vec<Vec<BigInt>> = Vec::new();
    for row in s.split(';') {
        parsed.push(coords(row)?);
    }
    if parsed.len() == 1 && parsed[0].is_empty() {
        parsed.clear();
    }
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        bail!("expected a {rows}x{cols} matrix, got {s:?}");
    }
    Ok(IntMatrix::from_rows(parsed))
}

/// A matrix flag that may be omitted, meaning the zero matrix.
pub fn matrix_flag(s: Option<&str>, rows: usize, cols: usize) -> Result<IntMatrix> {
    match s {
        Some(s) => matrix(s, rows, cols),
        None => Ok(IntMatrix::zero(rows, cols)),
    }
}

/// A unit model flag: `sphere:p1,p2,…` (the local truncated sphere over the
/// listed primes) or the name of a unit model in the problem file.  The
/// returned flag records whether the sphere shorthand was used, which
/// switches `--alpha` to rational-unit syntax.
pub fn unit_model_flag(s: &str, ws: &Workspace) -> Result<(UnitModel, bool)> {
    if let Some(rest) = s.strip_prefix("sphere:") {
        let primes = coords(rest)?;
        return Ok((local_truncated_sphere_model(&primes)?, true));
    }
    if s == "sphere" {
        return Ok((local_truncated_sphere_model(&[])?, true));
    }
    if let Some(m) = ws.unit_models.get(s) {
        return Ok((m.clone(), false));
    }
    bail!("unknown unit model {s:?} (expected sphere:p1,p2,… or a problem-file name)");
}

/// A Picard model flag: `local-ring:<units>[:<coords of -1>]` or the name of
/// a model in the problem file.  Omitted coordinates mean `-1 = 1` (an
/// untwisted line).
pub fn pic_model_flag(s: &str, ws: &Workspace) -> Result<PicModel> {
    if let Some(rest) = s.strip_prefix("local-ring:") {
        let (units_expr, minus_one) = match rest.split_once(':') {
            Some((u, c)) => (u, coords(c)?),
            None => (rest, Vec::new()),
        };
        let units = group_expr(units_expr)?;
        let minus_one = if minus_one.is_empty() {
            units.zero()
        } else {
            units.element(minus_one)?
        };
        return Ok(local_ring_pic_model(&units, &minus_one)?);
    }
    if let Some(m) = ws.pic_models.get(s) {
        return Ok(m.clone());
    }
    bail!("unknown Picard model {s:?} (expected local-ring:<units>[:<coords>] or a problem-file name)");
}

/// A unit of the model: for sphere models a nonzero rational `n` or `n/d`
/// factoring over the model primes; otherwise coordinates in the unit
/// group.  Problem-file element names work in both cases.
pub fn unit_flag(
    s: &str,
    model: &UnitModel,
    sphere_style: bool,
    ws: &Workspace,
) -> Result<GroupElement> {
    if let Some(e) = ws.elements.get(s) {
        return Ok(e.clone());
    }
    if sphere_style {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_bigint(n)?, parse_bigint(d)?),
            None => (parse_bigint(s)?, BigInt::one()),
        };
        return Ok(sphere_unit_element(model, &num, &den)?);
    }
    Ok(model.units.element(coords(s)?)?)
}
