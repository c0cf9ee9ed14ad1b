//! Machine-readable reports, one type per subcommand.  Every report derives
//! both `Serialize` and `Deserialize` so emitted JSON re-parses under the
//! same schema.

use serde::{Deserialize, Serialize};
use surd::abelian::{FgAbGroup, GroupHom};
use surd::models::{PicModel, UnitModel};
use surd::radicals::{ObstructionClass, ObstructionReport, TwistedGroupAlgebra};

use crate::format::{coords_of, Coords, GroupForm, MatrixForm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomReport {
    pub source: GroupForm,
    pub target: GroupForm,
    pub group: GroupForm,
    /// Matrices of the generating homomorphisms, in generator order.
    pub basis: Vec<MatrixForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtReport {
    pub source: GroupForm,
    pub target: GroupForm,
    pub group: GroupForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingReport {
    pub source: GroupForm,
    pub target: GroupForm,
    pub k: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_term: Option<GroupForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_term: Option<GroupForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub source: GroupForm,
    pub target: GroupForm,
    pub group: GroupForm,
    /// Orders of the classifying group's torsion generators.
    pub generator_orders: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<Coords>,
    /// Isomorphism type of the extension with the chosen class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<GroupForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitModelForm {
    #[serde(rename = "U0")]
    pub u0: GroupForm,
    #[serde(rename = "K1")]
    pub k1: GroupForm,
    pub connecting: MatrixForm,
}

impl UnitModelForm {
    pub fn of(m: &UnitModel) -> Self {
        UnitModelForm {
            u0: GroupForm::of(&m.units),
            k1: GroupForm::of(&m.k1),
            connecting: MatrixForm::of(m.kappa.matrix()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicModelForm {
    #[serde(rename = "P0")]
    pub p0: GroupForm,
    #[serde(rename = "P1")]
    pub p1: GroupForm,
    pub connecting: MatrixForm,
}

impl PicModelForm {
    pub fn of(m: &PicModel) -> Self {
        PicModelForm {
            p0: GroupForm::of(&m.pic),
            p1: GroupForm::of(&m.p1),
            connecting: MatrixForm::of(m.tau.matrix()),
        }
    }
}

/// An obstruction class in the shared serialization: its ambient group plus
/// either coordinates (element and Ext classes) or a matrix (homomorphism
/// classes).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionClassForm {
    pub kind: String,
    pub ambient: GroupForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Coords>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixForm>,
}

impl ObstructionClassForm {
    pub fn of(class: &ObstructionClass) -> Self {
        match class {
            ObstructionClass::Element { group, value } => ObstructionClassForm {
                kind: "element".into(),
                ambient: GroupForm::of(group),
                coords: Some(coords_of(value)),
                matrix: None,
            },
            ObstructionClass::Ext(class) => ObstructionClassForm {
                kind: "ext".into(),
                ambient: GroupForm::of(class.group()),
                coords: Some(class.coords().iter().map(|c| c.to_string()).collect()),
                matrix: None,
            },
            ObstructionClass::Hom(hom) => ObstructionClassForm {
                kind: "hom".into(),
                ambient: GroupForm::of(&class.ambient()),
                coords: None,
                matrix: Some(MatrixForm::of(hom.matrix())),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionForm {
    pub class: ObstructionClassForm,
    pub vanishes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsor: Option<GroupForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_count: Option<String>,
}

impl ObstructionForm {
    pub fn of(report: &ObstructionReport) -> Self {
        ObstructionForm {
            class: ObstructionClassForm::of(&report.obstruction),
            vanishes: report.vanishes,
            torsor: report.torsor.as_ref().map(GroupForm::of),
            lift_count: report.lift_count.as_ref().map(|n| n.to_string()),
        }
    }
}

/// Multiplication table in the shared form: basis labels plus entries
/// `[a, b, unit_label, a·b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraForm {
    pub basis: Vec<String>,
    pub entries: Vec<(String, String, String, String)>,
}

impl AlgebraForm {
    pub fn of(algebra: &TwistedGroupAlgebra) -> Self {
        let basis: Vec<String> =
            (0..algebra.dimension()).map(|i| algebra.basis_label(i).to_string()).collect();
        let entries = algebra
            .product_table()
            .iter()
            .map(|p| {
                (
                    basis[p.left].clone(),
                    basis[p.right].clone(),
                    algebra.units().format_element_multiplicative(&p.twist),
                    basis[p.result].clone(),
                )
            })
            .collect();
        AlgebraForm { basis, entries }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjoinRootReport {
    pub model: UnitModelForm,
    pub alpha: Coords,
    pub n: String,
    pub obstruction: ObstructionForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictUnitReport {
    pub model: UnitModelForm,
    pub alpha: Coords,
    pub obstruction: ObstructionForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub model: PicModelForm,
    pub element: Coords,
    /// Value of the twist on the element.
    pub twist_value: Coords,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftGradingReport {
    pub model: PicModelForm,
    pub grading: MatrixForm,
    pub obstruction: ObstructionForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendGradingReport {
    pub model: PicModelForm,
    /// The extended grading group.
    pub extended: GroupForm,
    /// Inclusion of the original Picard group into the extended one.
    pub inclusion: MatrixForm,
    pub obstruction: ObstructionForm,
    /// Matrices of the extended twists on the extended group's generators.
    pub extensions: Vec<MatrixForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleForm {
    pub grading_group: GroupForm,
    pub components: Vec<(Coords, usize, String)>,
}

impl ModuleForm {
    pub fn of(m: &surd::twisted_tensor::GradedModule) -> Self {
        ModuleForm {
            grading_group: GroupForm::of(m.grading()),
            components: m
                .components()
                .iter()
                .map(|c| (coords_of(&c.degree), c.rank, c.label.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorReport {
    pub module: ModuleForm,
    /// Structure constants `(p, q, twist_label, sign)` per summand.
    pub summands: Vec<(Coords, Coords, String, String)>,
    pub associativity: Vec<String>,
    pub symmetry: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PushoutReport {
    pub group: GroupForm,
    pub from_left: MatrixForm,
    pub from_right: MatrixForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Compact row-major rendering used by the text reports: `[1, 2; 3, 4]`.
pub fn matrix_text(m: &surd::matrix::IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(", ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Text rendering of a homomorphism as its matrix.
pub fn hom_text(h: &GroupHom) -> String {
    matrix_text(h.matrix())
}

/// `Hom(A, B)`-style headline.
pub fn pairing_headline(functor: &str, a: &FgAbGroup, b: &FgAbGroup, value: &FgAbGroup) -> String {
    format!("{functor}({a}, {b}) = {value}")
}
