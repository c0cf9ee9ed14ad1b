//! The `surd` command-line tool.
//!
//! Exit codes follow the obstruction-calculus convention: `0` means the
//! answer was computed and (for check-style commands) no obstruction stands;
//! `2` means the computation succeeded but the obstruction is nonzero or a
//! check failed — the report carries the class; `64` means the input was
//! malformed.  A nonzero obstruction is an answer, not an error, so families
//! of candidates can be scanned from a shell loop.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use surd::abelian::{em_maps, ext_group, hom_group, pushout, FgAbGroup, GroupHom};
use surd::extensions::{class_to_cocycle, is_split, radical_cocycle, total_group};
use surd::gradings::{
    extended_pic, grading_extension_obstruction, is_symmetric, strict_grading_obstruction,
    tau_extensions,
};
use surd::models::{local_ring_pic_model, local_truncated_sphere_model};
use surd::radicals::{adjoin_root, formal_root_obstruction, strict_unit_obstruction};
use surd::twisted_tensor::{
    check_associativity, check_symmetry, sign_form_from_parity, twisted_tensor, SignForm,
};

use surd_cli::format::{
    coords_of, parse_bigint, GroupForm, MatrixForm, ProblemFile, Workspace,
};
use surd_cli::parse;
use surd_cli::report::{
    hom_text, matrix_text, pairing_headline, AdjoinRootReport, AlgebraForm, ClassifyReport,
    ExtReport, ExtendGradingReport, HomReport, LiftGradingReport, MappingReport, ModuleForm,
    ObstructionForm, PicModelForm, PushoutReport, StrictUnitReport, SymmetricReport, TensorReport,
    UnitModelForm, ValidateReport,
};

#[derive(Parser)]
#[command(
    name = "surd",
    version,
    about = "Obstruction calculus for adjoining radicals and extending gradings \
             over finitely generated abelian groups"
)]
struct Cli {
    /// JSON problem file providing named groups, elements, homs, cocycles,
    /// models, modules, and signs.
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Hom(source, target) with its generating homomorphisms.
    Hom {
        /// Group expression (Z, Z^k, Z/n, sums with +) or problem-file name.
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Compute Ext(source, target).
    Ext {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Mapping group of Eilenberg-MacLane type in degree k = 0..3.
    EmMaps {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        k: u8,
    },
    /// Classify extensions of source by target; with --class, identify one
    /// extension up to isomorphism.
    ClassifyExt {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Coordinates of a class in the Ext group, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Adjoin a formal n-th root of a unit to a two-stage unit model.
    AdjoinRoot {
        /// `sphere:p1,p2,…` or a problem-file unit model name.
        #[arg(long)]
        model: String,
        /// For sphere models a rational unit like `5` or `-3/7`; otherwise
        /// coordinates in the unit group.  Problem-file element names work
        /// in both cases.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: String,
    },
    /// Obstruction for a unit to admit strict (coherently multiplicative)
    /// structure.
    StrictUnit {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Does the twist vanish on a Picard element?
    Symmetric {
        /// `local-ring:<units>[:<coords of -1>]` or a problem-file name.
        #[arg(long)]
        model: String,
        /// Coordinates in the Picard group.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Obstruction for a grading to lift to a strict grading.
    LiftGrading {
        #[arg(long)]
        model: String,
        /// Grading group expression or problem-file name.
        #[arg(long)]
        source: String,
        /// Matrix of the grading (rows = Picard generators, cols = source
        /// generators); omitted means zero.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Extend the twist along an extension of the Picard group, e.g. after
    /// adjoining a formal root of a line.
    ExtendGrading {
        #[arg(long)]
        model: String,
        /// Coordinates of the line whose n-th root extends the group.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<String>,
        /// Alternatively: a problem-file cocycle with fiber the Picard group.
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Twisted tensor product of two graded modules, with associativity and
    /// symmetry checks on the twisting data.
    TensorCheck {
        /// Problem-file module names.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Problem-file cocycle providing the degree twists.
        #[arg(long)]
        cocycle: String,
        /// Problem-file sign name.
        #[arg(long)]
        sign: Option<String>,
        /// Alternatively: a parity character as a problem-file hom name or
        /// an inline 1xk matrix into Z/2.
        #[arg(long)]
        parity: Option<String>,
        /// Problem-file hom to compare the diagonal signs against.
        #[arg(long)]
        tau_prime: Option<String>,
    },
    /// Pushout of two homomorphisms out of a common source.
    Pushout {
        #[arg(long)]
        source: String,
        #[arg(long)]
        left_target: String,
        /// Matrix of the left map; omitted means zero.
        #[arg(long, allow_hyphen_values = true)]
        left_matrix: Option<String>,
        #[arg(long)]
        right_target: String,
        #[arg(long, allow_hyphen_values = true)]
        right_matrix: Option<String>,
    },
    /// Build and print a model.
    Model {
        #[command(subcommand)]
        which: ModelCommand,
    },
    /// Validate a problem file without computing anything.
    Validate,
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Local truncated sphere: units are ±1 times the chosen primes, with
    /// the mod-4 character as connecting map.
    Sphere {
        /// Comma-separated primes, e.g. `3,5,13`.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Picard model of a local ring: an infinite cyclic Picard group whose
    /// generator twists by the class of -1.
    LocalRing {
        /// Unit group expression, e.g. `Z/2`.
        #[arg(long)]
        units: String,
        /// Coordinates of -1 in the unit group; omitted means -1 = 1.
        #[arg(long, allow_hyphen_values = true)]
        minus_one: Option<String>,
    },
}

/// How an invocation ended, mapped onto the exit-code contract.
enum Outcome {
    /// Computed; no obstruction in the way (exit 0).
    Done,
    /// Computed; the obstruction is nonzero or a check failed (exit 2).
    Obstructed,
    /// The input did not make sense (exit 64).
    Malformed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Obstructed) => ExitCode::from(2),
        Ok(Outcome::Malformed) => ExitCode::from(64),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(64)
        }
    }
}

fn write_json<T: Serialize>(path: Option<&PathBuf>, report: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    // `validate` wants the violations as its report rather than as an error.
    if matches!(cli.command, Command::Validate) {
        return validate(&cli);
    }

    let ws = match &cli.input {
        Some(path) => surd_cli::format::load_workspace(path)?,
        None => Workspace::default(),
    };
    let json = cli.json.as_ref();

    match cli.command {
        Command::Validate => unreachable!("handled above"),

        Command::Hom { source, target } => {
            let a = parse::group_flag(&source, &ws)?;
            let b = parse::group_flag(&target, &ws)?;
            let hom = hom_group(&a, &b);
            println!("{}", pairing_headline("Hom", &a, &b, &hom.group));
            for (i, h) in hom.basis.iter().enumerate() {
                println!("generator {}: {}", i + 1, hom_text(h));
            }
            write_json(
                json,
                &HomReport {
                    source: GroupForm::of(&a),
                    target: GroupForm::of(&b),
                    group: GroupForm::of(&hom.group),
                    basis: hom.basis.iter().map(|h| MatrixForm::of(h.matrix())).collect(),
                },
            )?;
            Ok(Outcome::Done)
        }

        Command::Ext { source, target } => {
            let a = parse::group_flag(&source, &ws)?;
            let b = parse::group_flag(&target, &ws)?;
            let ext = ext_group(&a, &b);
            println!("{}", pairing_headline("Ext", &a, &b, &ext.group));
            write_json(
                json,
                &ExtReport {
                    source: GroupForm::of(&a),
                    target: GroupForm::of(&b),
                    group: GroupForm::of(&ext.group),
                },
            )?;
            Ok(Outcome::Done)
        }

        Command::EmMaps { source, target, k } => {
            let a = parse::group_flag(&source, &ws)?;
            let b = parse::group_flag(&target, &ws)?;
            let report = em_maps(&a, &b, k)?;
            match &report.group {
                Some(g) => println!("{g}"),
                None => {
                    println!("undetermined: an extension of the quotient term by the subobject term");
                    if let Some(t) = &report.ext_term {
                        println!("subobject Ext(A, B[2]) = {t}");
                    }
                    if let Some(t) = &report.hom_term {
                        println!("quotient Hom(A, B/2) = {t}");
                    }
                }
            }
            write_json(
                json,
                &MappingReport {
                    source: GroupForm::of(&a),
                    target: GroupForm::of(&b),
                    k,
                    group: report.group.as_ref().map(GroupForm::of),
                    ext_term: report.ext_term.as_ref().map(GroupForm::of),
                    hom_term: report.hom_term.as_ref().map(GroupForm::of),
                },
            )?;
            Ok(Outcome::Done)
        }

        Command::ClassifyExt { source, target, class } => {
            let a = parse::group_flag(&source, &ws)?;
            let b = parse::group_flag(&target, &ws)?;
            let ext = ext_group(&a, &b);
            println!("{}", pairing_headline("Ext", &a, &b, &ext.group));
            let orders: Vec<String> =
                (0..ext.group.gen_count()).map(|i| ext.group.gen_order(i).to_string()).collect();
            if !orders.is_empty() {
                println!("generator orders: {}", orders.join(", "));
            }
            println!("classes: {}", ext.group.order().expect("Ext groups are finite"));

            let mut report = ClassifyReport {
                source: GroupForm::of(&a),
                target: GroupForm::of(&b),
                group: GroupForm::of(&ext.group),
                generator_orders: orders,
                class: None,
                middle: None,
                split: None,
            };
            if let Some(coords) = class {
                let class = ext.class(parse::coords(&coords)?)?;
                let cocycle = class_to_cocycle(&class)?;
                let total = total_group(&cocycle);
                let split = is_split(&cocycle);
                println!(
                    "class {}: middle group {}, {}",
                    ext.group.format_element(&class.element()),
                    total.group,
                    if split { "split" } else { "non-split" }
                );
                report.class = Some(class.coords().iter().map(|c| c.to_string()).collect());
                report.middle = Some(GroupForm::of(&total.group));
                report.split = Some(split);
            }
            write_json(json, &report)?;
            Ok(Outcome::Done)
        }

        Command::AdjoinRoot { model, alpha, n } => {
            let (model, sphere_style) = parse::unit_model_flag(&model, &ws)?;
            let alpha = parse::unit_flag(&alpha, &model, sphere_style, &ws)?;
            let n = parse_bigint(&n)?;
            if n < BigInt::one() {
                bail!("the root index n must be positive, got {n}");
            }
            let obstruction = formal_root_obstruction(&model, &alpha, &n)?;
            println!("obstruction {obstruction}");
            let mut report = AdjoinRootReport {
                model: UnitModelForm::of(&model),
                alpha: coords_of(&alpha),
                n: n.to_string(),
                obstruction: ObstructionForm::of(&obstruction),
                algebra: None,
            };
            let outcome = if obstruction.vanishes {
                let algebra = adjoin_root(&model, &alpha, &n)?;
                let labels: Vec<String> =
                    (0..algebra.dimension()).map(|i| algebra.basis_label(i).to_string()).collect();
                println!("basis: {}", labels.join(", "));
                for p in algebra.product_table() {
                    println!("{}", algebra.render_product(&p));
                }
                report.algebra = Some(AlgebraForm::of(&algebra));
                Outcome::Done
            } else {
                Outcome::Obstructed
            };
            write_json(json, &report)?;
            Ok(outcome)
        }

        Command::StrictUnit { model, alpha } => {
            let (model, sphere_style) = parse::unit_model_flag(&model, &ws)?;
            let alpha = parse::unit_flag(&alpha, &model, sphere_style, &ws)?;
            let obstruction = strict_unit_obstruction(&model, &alpha)?;
            println!("obstruction {obstruction}");
            write_json(
                json,
                &StrictUnitReport {
                    model: UnitModelForm::of(&model),
                    alpha: coords_of(&alpha),
                    obstruction: ObstructionForm::of(&obstruction),
                },
            )?;
            Ok(if obstruction.vanishes { Outcome::Done } else { Outcome::Obstructed })
        }

        Command::Symmetric { model, element } => {
            let model = parse::pic_model_flag(&model, &ws)?;
            let gamma = model.pic.element(parse::coords(&element)?)?;
            let value = model.tau.apply(&gamma);
            let symmetric = is_symmetric(&model, &gamma);
            if symmetric {
                println!("symmetric: the twist vanishes on {}", model.pic.format_element(&gamma));
            } else {
                println!(
                    "not symmetric: twist value {} in {}",
                    model.p1.format_element(&value),
                    model.p1
                );
            }
            write_json(
                json,
                &SymmetricReport {
                    model: PicModelForm::of(&model),
                    element: coords_of(&gamma),
                    twist_value: coords_of(&value),
                    symmetric,
                },
            )?;
            Ok(if symmetric { Outcome::Done } else { Outcome::Obstructed })
        }

        Command::LiftGrading { model, source, matrix } => {
            let model = parse::pic_model_flag(&model, &ws)?;
            let source = parse::group_flag(&source, &ws)?;
            let m = parse::matrix_flag(
                matrix.as_deref(),
                model.pic.gen_count(),
                source.gen_count(),
            )?;
            let rho = GroupHom::new(source, model.pic.clone(), m)?;
            let obstruction = strict_grading_obstruction(&model, &rho)?;
            println!("obstruction {obstruction}");
            write_json(
                json,
                &LiftGradingReport {
                    model: PicModelForm::of(&model),
                    grading: MatrixForm::of(rho.matrix()),
                    obstruction: ObstructionForm::of(&obstruction),
                },
            )?;
            Ok(if obstruction.vanishes { Outcome::Done } else { Outcome::Obstructed })
        }

        Command::ExtendGrading { model, alpha, n, cocycle } => {
            let model = parse::pic_model_flag(&model, &ws)?;
            let gamma = match (&alpha, &n, &cocycle) {
                (Some(alpha), Some(n), None) => {
                    let alpha = model.pic.element(parse::coords(alpha)?)?;
                    let n = parse_bigint(n)?;
                    if n < BigInt::one() {
                        bail!("the root index n must be positive, got {n}");
                    }
                    radical_cocycle(&model.pic, &alpha, &n)
                }
                (None, None, Some(name)) => ws
                    .cocycles
                    .get(name)
                    .cloned()
                    .ok_or_else(|| anyhow!("unknown cocycle {name:?}"))?,
                _ => bail!("provide either --alpha with --n, or --cocycle"),
            };
            let total = extended_pic(&model, &gamma)?;
            let obstruction = grading_extension_obstruction(&model, &gamma)?;
            let lifts = tau_extensions(&model, &gamma)?;
            println!(
                "extended group: {} (inclusion {})",
                total.group,
                matrix_text(total.inclusion.matrix())
            );
            println!("obstruction {obstruction}");
            println!("extensions: {}", lifts.homs.len());
            for (i, h) in lifts.homs.iter().enumerate() {
                println!("extension {}: {}", i + 1, hom_text(h));
            }
            write_json(
                json,
                &ExtendGradingReport {
                    model: PicModelForm::of(&model),
                    extended: GroupForm::of(&total.group),
                    inclusion: MatrixForm::of(total.inclusion.matrix()),
                    obstruction: ObstructionForm::of(&obstruction),
                    extensions: lifts.homs.iter().map(|h| MatrixForm::of(h.matrix())).collect(),
                },
            )?;
            Ok(if obstruction.vanishes { Outcome::Done } else { Outcome::Obstructed })
        }

        Command::TensorCheck { left, right, cocycle, sign, parity, tau_prime } => {
            let m = ws.modules.get(&left).ok_or_else(|| anyhow!("unknown module {left:?}"))?;
            let n = ws.modules.get(&right).ok_or_else(|| anyhow!("unknown module {right:?}"))?;
            let c = ws
                .cocycles
                .get(&cocycle)
                .ok_or_else(|| anyhow!("unknown cocycle {cocycle:?}"))?;
            let eps = match (&sign, &parity) {
                (Some(name), None) => ws
                    .signs
                    .get(name)
                    .cloned()
                    .ok_or_else(|| anyhow!("unknown sign {name:?}"))?,
                (None, Some(given)) => {
                    let chi = match ws.homs.get(given) {
                        Some(h) => h.clone(),
                        None => {
                            let grading = m.grading().clone();
                            let matrix = parse::matrix(given, 1, grading.gen_count())?;
                            GroupHom::new(grading, FgAbGroup::cyclic(2), matrix)?
                        }
                    };
                    sign_form_from_parity(chi)?
                }
                (None, None) => {
                    SignForm::constant_plus_one(m.grading().clone(), FgAbGroup::cyclic(2))?
                }
                _ => bail!("provide at most one of --sign and --parity"),
            };
            let tau_prime = match &tau_prime {
                Some(name) => Some(
                    ws.homs
                        .get(name)
                        .ok_or_else(|| anyhow!("unknown hom {name:?}"))?,
                ),
                None => None,
            };

            let t = twisted_tensor(m, n, c, &eps)?;
            let assoc = check_associativity(c, &eps)?;
            let symm = check_symmetry(c, &eps, tau_prime)?;
            let grading = t.module.grading();
            for comp in t.module.components() {
                println!(
                    "degree {}: rank {} — {}",
                    grading.format_element(&comp.degree),
                    comp.rank,
                    comp.label
                );
            }
            println!("structure constants:");
            for s in &t.summands {
                println!(
                    "  c({}, {}) = {}, sign {}",
                    grading.format_element(&s.left_degree),
                    grading.format_element(&s.right_degree),
                    s.twist_label,
                    s.sign_label
                );
            }
            report_check("associativity", &assoc.violations);
            report_check("symmetry", &symm.violations);
            let ok = assoc.is_valid() && symm.is_valid();
            write_json(
                json,
                &TensorReport {
                    module: ModuleForm::of(&t.module),
                    summands: t
                        .summands
                        .iter()
                        .map(|s| {
                            (
                                coords_of(&s.left_degree),
                                coords_of(&s.right_degree),
                                s.twist_label.clone(),
                                s.sign_label.clone(),
                            )
                        })
                        .collect(),
                    associativity: assoc.violations.clone(),
                    symmetry: symm.violations.clone(),
                    ok,
                },
            )?;
            Ok(if ok { Outcome::Done } else { Outcome::Obstructed })
        }

        Command::Pushout { source, left_target, left_matrix, right_target, right_matrix } => {
            let source = parse::group_flag(&source, &ws)?;
            let lt = parse::group_flag(&left_target, &ws)?;
            let rt = parse::group_flag(&right_target, &ws)?;
            let lm = parse::matrix_flag(
                left_matrix.as_deref(),
                lt.gen_count(),
                source.gen_count(),
            )?;
            let rm = parse::matrix_flag(
                right_matrix.as_deref(),
                rt.gen_count(),
                source.gen_count(),
            )?;
            let f = GroupHom::new(source.clone(), lt, lm)?;
            let g = GroupHom::new(source, rt, rm)?;
            let p = pushout(&f, &g)?;
            println!("pushout: {}", p.group);
            println!("from left: {}", hom_text(&p.from_left));
            println!("from right: {}", hom_text(&p.from_right));
            write_json(
                json,
                &PushoutReport {
                    group: GroupForm::of(&p.group),
                    from_left: MatrixForm::of(p.from_left.matrix()),
                    from_right: MatrixForm::of(p.from_right.matrix()),
                },
            )?;
            Ok(Outcome::Done)
        }

        Command::Model { which } => match which {
            ModelCommand::Sphere { primes } => {
                let primes = parse::coords(primes.as_deref().unwrap_or(""))?;
                let model = local_truncated_sphere_model(&primes)?;
                print_unit_model(&model);
                write_json(json, &UnitModelForm::of(&model))?;
                Ok(Outcome::Done)
            }
            ModelCommand::LocalRing { units, minus_one } => {
                let units = parse::group_expr(&units)?;
                let minus_one = match minus_one {
                    Some(c) => units.element(parse::coords(&c)?)?,
                    None => units.zero(),
                };
                let model = local_ring_pic_model(&units, &minus_one)?;
                println!("P0 = {}{}", model.pic, label_suffix(&model.pic));
                println!("P1 = {}{}", model.p1, label_suffix(&model.p1));
                println!("connecting: {}", matrix_text(model.tau.matrix()));
                write_json(json, &PicModelForm::of(&model))?;
                Ok(Outcome::Done)
            }
        },
    }
}

fn validate(cli: &Cli) -> Result<Outcome> {
    let path = cli.input.as_ref().ok_or_else(|| anyhow!("validate requires --input <path>"))?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let report = match serde_json::from_str::<ProblemFile>(&text) {
        Err(e) => ValidateReport {
            ok: false,
            violations: vec![format!("not a valid problem file: {e}")],
        },
        Ok(file) => {
            let (_, violations) = Workspace::resolve(&file);
            ValidateReport { ok: violations.is_empty(), violations }
        }
    };
    if report.ok {
        println!("ok");
    } else {
        for v in &report.violations {
            println!("violation: {v}");
        }
    }
    write_json(cli.json.as_ref(), &report)?;
    Ok(if report.ok { Outcome::Done } else { Outcome::Malformed })
}

fn report_check(name: &str, violations: &[String]) {
    if violations.is_empty() {
        println!("{name}: ok");
    } else {
        println!("{name}: {} violation(s)", violations.len());
        for v in violations {
            println!("  {v}");
        }
    }
}

fn print_unit_model(model: &surd::models::UnitModel) {
    println!("U0 = {}{}", model.units, label_suffix(&model.units));
    println!("K1 = {}{}", model.k1, label_suffix(&model.k1));
    println!("connecting: {}", matrix_text(model.kappa.matrix()));
}

fn label_suffix(g: &FgAbGroup) -> String {
    match g.labels() {
        Some(labels) if !labels.is_empty() => format!(" with labels {}", labels.join(", ")),
        _ => String::new(),
    }
}
