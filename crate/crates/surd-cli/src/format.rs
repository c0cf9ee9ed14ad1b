//! The shared JSON serialization: groups as `{free_rank, invariant_factors,
//! labels}`, matrices as `{rows, cols, entries}` in row-major order, and all
//! integers as decimal strings so arbitrary-precision values survive every
//! JSON reader.  Problem files bundle named objects that refer to each other
//! by name; [`Workspace::resolve`] materializes them and reports every
//! violation instead of stopping at the first.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use surd::abelian::{FgAbGroup, GroupElement, GroupHom};
use surd::extensions::SymmetricCocycle;
use surd::matrix::IntMatrix;
use surd::models::{PicModel, UnitModel};
use surd::twisted_tensor::{sign_form_from_parity, GradedModule, SignForm};

/// Coordinates of a group element, one decimal string per generator.
pub type Coords = Vec<String>;

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| anyhow!("not an integer: {s:?}"))
}

pub fn coords_of(e: &GroupElement) -> Coords {
    e.coords().iter().map(BigInt::to_string).collect()
}

pub fn coords_to_bigints(coords: &[String]) -> Result<Vec<BigInt>> {
    coords.iter().map(|s| parse_bigint(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupForm {
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupForm {
    pub fn of(g: &FgAbGroup) -> Self {
        GroupForm {
            free_rank: g.free_rank(),
            invariant_factors: g.invariant_factors().iter().map(BigInt::to_string).collect(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn build(&self) -> Result<FgAbGroup> {
        let factors = coords_to_bigints(&self.invariant_factors)?;
        let group = FgAbGroup::new(self.free_rank, factors)?;
        match &self.labels {
            Some(labels) => Ok(group.with_labels(labels.clone())?),
            None => Ok(group),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixForm {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl MatrixForm {
    pub fn of(m: &IntMatrix) -> Self {
        let entries =
            (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| m.get(i, j).to_string()));
        MatrixForm { rows: m.rows(), cols: m.cols(), entries: entries.collect() }
    }

    pub fn build(&self) -> Result<IntMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(anyhow!(
                "matrix declares {}x{} = {} entries but lists {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            ));
        }
        let values = coords_to_bigints(&self.entries)?;
        let mut iter = values.into_iter();
        Ok(IntMatrix::from_fn(self.rows, self.cols, |_, _| iter.next().expect("counted above")))
    }
}

/// A named element: coordinates in a named group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub group: String,
    pub coords: Coords,
}

/// A named homomorphism between named groups; the matrix has one row per
/// target generator and one column per source generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub matrix: MatrixForm,
}

/// A symmetric 2-cocycle given sparsely: triples `[a, b, value]` of
/// coordinates; omitted pairs are zero, and `(b, a)` is filled from `(a, b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub base: String,
    pub fiber: String,
    pub table: Vec<(Coords, Coords, Coords)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitModelEntry {
    #[serde(rename = "U0")]
    pub u0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    pub connecting: MatrixForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicModelEntry {
    #[serde(rename = "P0")]
    pub p0: String,
    #[serde(rename = "P1")]
    pub p1: String,
    pub connecting: MatrixForm,
}

/// A graded module: a named finite grading group and `[degree, rank, label]`
/// components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleEntry {
    pub grading_group: String,
    pub components: Vec<(Coords, usize, String)>,
}

/// Braiding-sign data: either a parity character (a named hom to `Z/2`,
/// inducing `(−1)^{chi(a)chi(b)}`) or an explicit table of `[a, b, value]`
/// triples valued in a named 2-torsion group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
pub enum SignEntry {
    Parity { parity: String },
    Table { grading: String, values: String, table: Vec<(Coords, Coords, Coords)> },
}

/// A declarative problem file: named objects in the shared serialization,
/// cross-referenced by name.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupForm>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, CocycleEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unit_models: BTreeMap<String, UnitModelEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pic_models: BTreeMap<String, PicModelEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub signs: BTreeMap<String, SignEntry>,
}

/// The objects of a problem file, resolved and validated.
#[derive(Debug, Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, FgAbGroup>,
    pub elements: BTreeMap<String, GroupElement>,
    pub element_groups: BTreeMap<String, String>,
    pub homs: BTreeMap<String, GroupHom>,
    pub cocycles: BTreeMap<String, SymmetricCocycle>,
    pub unit_models: BTreeMap<String, UnitModel>,
    pub pic_models: BTreeMap<String, PicModel>,
    pub modules: BTreeMap<String, GradedModule>,
    pub signs: BTreeMap<String, SignForm>,
}

impl Workspace {
    /// Materializes every named object, collecting all violations.  The
    /// workspace is usable only when the violation list is empty.
    pub fn resolve(file: &ProblemFile) -> (Workspace, Vec<String>) {
        let mut ws = Workspace::default();
        let mut violations = Vec::new();
        if file.version != 1 {
            violations.push(format!("unsupported version {} (expected 1)", file.version));
        }

        for (name, form) in &file.groups {
            match form.build() {
                Ok(g) => {
                    ws.groups.insert(name.clone(), g);
                }
                Err(e) => violations.push(format!("group {name}: {e}")),
            }
        }

        for (name, entry) in &file.elements {
            let Some(group) = lookup(&ws.groups, &entry.group, "group", name, &mut violations)
            else {
                continue;
            };
            match coords_to_bigints(&entry.coords).and_then(|c| Ok(group.element(c)?)) {
                Ok(e) => {
                    ws.elements.insert(name.clone(), e);
                    ws.element_groups.insert(name.clone(), entry.group.clone());
                }
                Err(e) => violations.push(format!("element {name}: {e}")),
            }
        }

        for (name, entry) in &file.homs {
            let source = lookup(&ws.groups, &entry.source, "group", name, &mut violations);
            let target = lookup(&ws.groups, &entry.target, "group", name, &mut violations);
            let (Some(source), Some(target)) = (source, target) else { continue };
            let matrix = match entry.matrix.build() {
                Ok(m) => m,
                Err(e) => {
                    violations.push(format!("hom {name}: {e}"));
                    continue;
                }
            };
            match GroupHom::new_unchecked(source.clone(), target.clone(), matrix) {
                Ok(h) => {
                    for v in h.well_defined_violations() {
                        violations.push(format!("hom {name}: {v}"));
                    }
                    ws.homs.insert(name.clone(), h);
                }
                Err(e) => violations.push(format!("hom {name}: {e}")),
            }
        }

        for (name, entry) in &file.cocycles {
            let base = lookup(&ws.groups, &entry.base, "group", name, &mut violations);
            let fiber = lookup(&ws.groups, &entry.fiber, "group", name, &mut violations);
            let (Some(base), Some(fiber)) = (base, fiber) else { continue };
            match build_cocycle(base, fiber, &entry.table) {
                Ok(c) => {
                    for v in c.violations() {
                        violations.push(format!("cocycle {name}: {v}"));
                    }
                    ws.cocycles.insert(name.clone(), c);
                }
                Err(e) => violations.push(format!("cocycle {name}: {e}")),
            }
        }

        for (name, entry) in &file.unit_models {
            let u0 = lookup(&ws.groups, &entry.u0, "group", name, &mut violations);
            let k1 = lookup(&ws.groups, &entry.k1, "group", name, &mut violations);
            let (Some(u0), Some(k1)) = (u0, k1) else { continue };
            match entry.connecting.build().and_then(|m| {
                Ok(GroupHom::new_unchecked(u0.clone(), k1.clone(), m)?)
            }) {
                Ok(kappa) => {
                    let model = UnitModel::new_unchecked(u0.clone(), k1.clone(), kappa);
                    for v in model.validate().violations {
                        violations.push(format!("unit model {name}: {v}"));
                    }
                    ws.unit_models.insert(name.clone(), model);
                }
                Err(e) => violations.push(format!("unit model {name}: {e}")),
            }
        }

        for (name, entry) in &file.pic_models {
            let p0 = lookup(&ws.groups, &entry.p0, "group", name, &mut violations);
            let p1 = lookup(&ws.groups, &entry.p1, "group", name, &mut violations);
            let (Some(p0), Some(p1)) = (p0, p1) else { continue };
            match entry.connecting.build().and_then(|m| {
                Ok(GroupHom::new_unchecked(p0.clone(), p1.clone(), m)?)
            }) {
                Ok(tau) => {
                    let model = PicModel::new_unchecked(p0.clone(), p1.clone(), tau);
                    for v in model.validate().violations {
                        violations.push(format!("pic model {name}: {v}"));
                    }
                    ws.pic_models.insert(name.clone(), model);
                }
                Err(e) => violations.push(format!("pic model {name}: {e}")),
            }
        }

        for (name, entry) in &file.modules {
            let Some(grading) =
                lookup(&ws.groups, &entry.grading_group, "group", name, &mut violations)
            else {
                continue;
            };
            let components: Result<Vec<_>> = entry
                .components
                .iter()
                .map(|(coords, rank, label)| {
                    let degree = grading.element(coords_to_bigints(coords)?)?;
                    Ok((degree, *rank, label.clone()))
                })
                .collect();
            match components.and_then(|c| Ok(GradedModule::new(grading.clone(), c)?)) {
                Ok(m) => {
                    ws.modules.insert(name.clone(), m);
                }
                Err(e) => violations.push(format!("module {name}: {e}")),
            }
        }

        for (name, entry) in &file.signs {
            match entry {
                SignEntry::Parity { parity } => {
                    let Some(chi) = lookup(&ws.homs, parity, "hom", name, &mut violations)
                    else {
                        continue;
                    };
                    match sign_form_from_parity(chi.clone()) {
                        Ok(s) => {
                            ws.signs.insert(name.clone(), s);
                        }
                        Err(e) => violations.push(format!("sign {name}: {e}")),
                    }
                }
                SignEntry::Table { grading, values, table } => {
                    let grading = lookup(&ws.groups, grading, "group", name, &mut violations);
                    let values = lookup(&ws.groups, values, "group", name, &mut violations);
                    let (Some(grading), Some(values)) = (grading, values) else { continue };
                    match build_sign_table(grading, values, table) {
                        Ok(s) => {
                            ws.signs.insert(name.clone(), s);
                        }
                        Err(e) => violations.push(format!("sign {name}: {e}")),
                    }
                }
            }
        }

        (ws, violations)
    }
}

fn lookup<'a, T>(
    map: &'a BTreeMap<String, T>,
    key: &str,
    kind: &str,
    owner: &str,
    violations: &mut Vec<String>,
) -> Option<&'a T> {
    let found = map.get(key);
    if found.is_none() {
        violations.push(format!("{owner}: unknown {kind} {key:?}"));
    }
    found
}

/// Expands sparse `[a, b, value]` triples into the full row-major table the
/// core type expects, filling `(b, a)` symmetrically.
fn build_cocycle(
    base: &FgAbGroup,
    fiber: &FgAbGroup,
    triples: &[(Coords, Coords, Coords)],
) -> Result<SymmetricCocycle> {
    let order = base
        .order()
        .and_then(|n| n.to_usize())
        .ok_or_else(|| anyhow!("cocycle tables need a finite base, got {base}"))?;
    let mut table = vec![fiber.zero(); order * order];
    for (a, b, value) in triples {
        let a = base.element(coords_to_bigints(a)?)?;
        let b = base.element(coords_to_bigints(b)?)?;
        let value = fiber.element(coords_to_bigints(value)?)?;
        let i = base.element_index(&a).to_usize().expect("finite base");
        let j = base.element_index(&b).to_usize().expect("finite base");
        table[i * order + j] = value.clone();
        table[j * order + i] = value;
    }
    Ok(SymmetricCocycle::new_unchecked(base.clone(), fiber.clone(), table)?)
}

fn build_sign_table(
    grading: &FgAbGroup,
    values: &FgAbGroup,
    triples: &[(Coords, Coords, Coords)],
) -> Result<SignForm> {
    let order = grading
        .order()
        .and_then(|n| n.to_usize())
        .ok_or_else(|| anyhow!("sign tables need a finite grading group, got {grading}"))?;
    let mut table = vec![values.zero(); order * order];
    for (a, b, value) in triples {
        let a = grading.element(coords_to_bigints(a)?)?;
        let b = grading.element(coords_to_bigints(b)?)?;
        let value = values.element(coords_to_bigints(value)?)?;
        let i = grading.element_index(&a).to_usize().expect("finite grading");
        let j = grading.element_index(&b).to_usize().expect("finite grading");
        table[i * order + j] = value.clone();
        table[j * order + i] = value;
    }
    Ok(SignForm::from_table(grading.clone(), values.clone(), table)?)
}

/// Reads and resolves a problem file, failing loudly with every violation.
pub fn load_workspace(path: &std::path::Path) -> Result<Workspace> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: ProblemFile = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid problem file", path.display()))?;
    let (ws, violations) = Workspace::resolve(&file);
    if violations.is_empty() {
        Ok(ws)
    } else {
        Err(anyhow!("{}", violations.join("; ")))
    }
}
