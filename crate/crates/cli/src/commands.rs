use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use braidcat::braid::{is_pure, BraidError, BraidWord, PiAction, SampledKernelCheck};
use braidcat::closure::{
    group_closure, projective_closure, scalar_spectrum, ClosureResult, ClosureStatus, ClosureSummary,
    GroupElement, ProjectiveNormalize, ScalarMatrix, ScalarReport,
};
use braidcat::cocycle::{
    crossed_structure, normalize_cocycle, pushforward_cocycle, Cochain2File, CocycleFile,
};
use braidcat::group::{FiniteGroup, GroupSpec};
use braidcat::rep::{check_braid_relations, AlphaSpec, DenseMatrix, Matrix, MonomialMatrix, RepFile, RepSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::parse::load_json;
use crate::{Command, Outcome};

const INCONCLUSIVE: u8 = 2;

pub fn run(cmd: &Command) -> Result<Outcome, String> {
    match cmd {
        Command::TyRep {
            a,
            q,
            chi,
            tau_sign,
            delta_choice,
            m,
            strands,
            conductor,
            check_relations,
            ..
        } => build(
            RepSpec::Ty {
                a: a.clone(),
                chi: chi.clone().map(|t| t.0),
                q: q.clone(),
                tau_sign: *tau_sign,
                delta_choice: *delta_choice,
                m: *m,
                strands: *strands,
                conductor: *conductor,
            },
            *check_relations,
        ),
        Command::PointedRep {
            a,
            c,
            gram,
            n,
            conductor,
            check_relations,
            ..
        } => build(
            RepSpec::Pointed {
                a: a.clone(),
                c: c.clone().map(|t| t.0),
                gram: gram.clone().map(|t| t.0),
                n: *n,
                conductor: *conductor,
            },
            *check_relations,
        ),
        Command::DoubleRep {
            group,
            builtin_j,
            alpha,
            x,
            n,
            conductor,
            check_relations,
            ..
        } => {
            let alpha = match (builtin_j, alpha) {
                (Some(j), _) => AlphaSpec::Builtin { builtin_j: *j },
                (None, Some(path)) => {
                    let file: CocycleFile = load_json(path)?;
                    if file.group.build().map_err(|e| e.to_string())? != group.build().map_err(|e| e.to_string())? {
                        return Err(format!("{}: cocycle group differs from --group", path.display()));
                    }
                    AlphaSpec::Table { values: file.values }
                }
                (None, None) => AlphaSpec::default(),
            };
            build(
                RepSpec::Double {
                    group: group.clone(),
                    alpha,
                    x: *x,
                    n: *n,
                    conductor: *conductor,
                },
                *check_relations,
            )
        }
        Command::CheckRelations { rep, .. } => {
            let rep = load_rep(rep)?;
            let report = check_braid_relations(&rep.generators).map_err(|e| e.to_string())?;
            let text = relation_text(&report);
            Ok(Outcome {
                json: json!({
                    "command": "check-relations",
                    "input": rep.spec,
                    "relations": report,
                    "passed": report.passed(),
                }),
                code: if report.passed() { 0 } else { 1 },
                report: text,
            })
        }
        Command::Closure {
            rep,
            cap,
            bound,
            no_scalars,
            ..
        } => {
            let rep = load_rep(rep)?;
            let bound = match bound {
                Some(b) => *b,
                None => rep.spec.default_scalar_bound(rep.conductor).map_err(|e| e.to_string())?,
            };
            let gens = Gens::from_rep(&rep)?;
            let (summary, elapsed, scalars) = gens.closure(cap.cap, (!*no_scalars).then_some(bound))?;
            Ok(closure_outcome("closure", &rep, summary, elapsed, cap.cap, scalars, (!*no_scalars).then_some(bound)))
        }
        Command::ProjectiveClosure { rep, cap, .. } => {
            let rep = load_rep(rep)?;
            let (summary, elapsed) = Gens::from_rep(&rep)?.projective(cap.cap)?;
            Ok(closure_outcome("projective-closure", &rep, summary, elapsed, cap.cap, None, None))
        }
        Command::ScalarReport { rep, cap, bound, .. } => {
            let rep = load_rep(rep)?;
            let bound = match bound {
                Some(b) => *b,
                None => rep.spec.default_scalar_bound(rep.conductor).map_err(|e| e.to_string())?,
            };
            let (summary, elapsed, scalars) = Gens::from_rep(&rep)?.closure(cap.cap, Some(bound))?;
            Ok(closure_outcome("scalar-report", &rep, summary, elapsed, cap.cap, scalars, Some(bound)))
        }
        Command::PiOrder { group, n, cap, .. } => {
            let action = PiAction::new(build_group(group)?, *n).map_err(|e| e.to_string())?;
            let input = json!({ "group": group, "n": n });
            let result = match action.image_order(cap.cap, cap.cap) {
                Ok(r) => r,
                Err(braidcat::braid::PiOrderError::Braid(e @ BraidError::TooLarge { .. })) => {
                    return Ok(Outcome {
                        json: json!({
                            "command": "pi-order",
                            "input": input,
                            "status": ClosureStatus::CapExceeded,
                            "order": null,
                            "cap": cap.cap,
                        }),
                        report: format!("inconclusive: {e}\n"),
                        code: INCONCLUSIVE,
                    })
                }
                Err(e) => return Err(e.to_string()),
            };
            let report = match result.order {
                Some(o) => format!("|π(B_{n})| = {o} on {} points\n", action.point_count().unwrap_or(0)),
                None => format!("inconclusive: more than {} elements\n", cap.cap),
            };
            Ok(Outcome {
                json: json!({
                    "command": "pi-order",
                    "input": input,
                    "status": result.status,
                    "order": result.order,
                    "elements_found": result.elements_found,
                    "levels": result.levels,
                    "cap": cap.cap,
                    "elapsed_ms": result.elapsed_ms,
                }),
                report,
                code: if result.is_complete() { 0 } else { INCONCLUSIVE },
            })
        }
        Command::InKernel {
            group,
            n,
            word,
            cap,
            samples,
            seed,
            ..
        } => {
            let action = PiAction::new(build_group(group)?, *n).map_err(|e| e.to_string())?;
            let w = BraidWord::parse(*n, word).map_err(|e| e.to_string())?;
            let input = json!({ "group": group, "n": n, "word": w.to_string() });
            let pure = is_pure(&w);
            match action.in_kernel(&w, cap.cap) {
                Ok(k) => Ok(Outcome {
                    json: json!({
                        "command": "in-kernel",
                        "input": input,
                        "method": "exhaustive",
                        "in_kernel": k,
                        "pure": pure,
                    }),
                    report: format!("{w}: {}\n", if k { "in the kernel" } else { "not in the kernel" }),
                    code: 0,
                }),
                Err(e @ BraidError::TooLarge { .. }) => {
                    let Some(samples) = samples else {
                        return Ok(Outcome {
                            json: json!({
                                "command": "in-kernel",
                                "input": input,
                                "method": "exhaustive",
                                "in_kernel": null,
                                "pure": pure,
                            }),
                            report: format!("inconclusive: {e}\n"),
                            code: INCONCLUSIVE,
                        });
                    };
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let check = action.in_kernel_sampled(&w, *samples, &mut rng).map_err(|e| e.to_string())?;
                    Ok(match check {
                        SampledKernelCheck::Moved { point, image } => Outcome {
                            json: json!({
                                "command": "in-kernel",
                                "input": input,
                                "method": "sampled",
                                "in_kernel": false,
                                "pure": pure,
                                "witness": { "point": point, "image": image },
                            }),
                            report: format!("{w}: not in the kernel, moves {point:?}\n"),
                            code: 0,
                        },
                        SampledKernelCheck::NoWitness { samples } => Outcome {
                            json: json!({
                                "command": "in-kernel",
                                "input": input,
                                "method": "sampled",
                                "in_kernel": null,
                                "pure": pure,
                                "samples": samples,
                                "seed": seed,
                            }),
                            report: format!("inconclusive: {samples} sampled points are fixed\n"),
                            code: INCONCLUSIVE,
                        },
                    })
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::NormalizeCocycle { input, .. } => {
            let file: CocycleFile = load_json(input)?;
            let alpha = file.to_cocycle().map_err(|e| located(input, e))?;
            let (normalized, r) = normalize_cocycle(&alpha).map_err(|e| located(input, e))?;
            Ok(Outcome {
                json: json!({
                    "command": "normalize-cocycle",
                    "input": file,
                    "normalized": CocycleFile::from_cochain(file.group.clone(), &normalized),
                    "witness": Cochain2File::from_cochain(file.group.clone(), &r),
                    "exponent": normalized.value_exponent(),
                }),
                report: format!(
                    "normalized cocycle on a group of order {}; values have exponent {}\n",
                    alpha.group().order(),
                    normalized.value_exponent()
                ),
                code: 0,
            })
        }
        Command::Pushforward { input, normal, .. } => {
            let file: CocycleFile = load_json(input)?;
            let alpha = file.to_cocycle().map_err(|e| located(input, e))?;
            let push = pushforward_cocycle(&alpha, normal).map_err(|e| e.to_string())?;
            let quotient = GroupSpec::Table {
                mul: push.quotient.table(),
            };
            Ok(Outcome {
                json: json!({
                    "command": "pushforward",
                    "input": file,
                    "normal": normal,
                    "projection": push.projection,
                    "cocycle": CocycleFile::from_cochain(quotient, &push.cocycle),
                }),
                report: format!("pushed forward to a quotient of order {}\n", push.quotient.order()),
                code: 0,
            })
        }
        Command::CrossedStructureVerify { input, .. } => {
            let file: CocycleFile = load_json(input)?;
            let alpha = file.to_cocycle().map_err(|e| located(input, e))?;
            crossed_structure(&alpha).map_err(|e| located(input, e))?;
            let n = alpha.group().order();
            Ok(Outcome {
                json: json!({
                    "command": "crossed-structure-verify",
                    "input": file,
                    "identities": [
                        "tensor-functor",
                        "action-associativity",
                        "monoidal-composition",
                        "hexagon-0",
                        "trivial-crossed-braiding"
                    ],
                    "passed": true,
                }),
                report: format!("all five identity families hold on a group of order {n}\n"),
                code: 0,
            })
        }
    }
}

fn located(path: &Path, e: impl std::fmt::Display) -> String {
    format!("{}: {e}", path.display())
}

fn build_group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, String> {
    spec.build().map(Arc::new).map_err(|e| e.to_string())
}

fn build(spec: RepSpec, check: bool) -> Result<Outcome, String> {
    let mut rep = spec.build().map_err(|e| e.to_string())?;
    let mut report = format!(
        "{} representation: {} strands, dimension {}, conductor {}\n",
        spec.family(),
        rep.strands,
        rep.generators[0].dim(),
        rep.conductor
    );
    let mut code = 0;
    if check {
        let r = check_braid_relations(&rep.generators).map_err(|e| e.to_string())?;
        report.push_str(&relation_text(&r));
        let verdict = match r.first_failure {
            None => format!("passed ({} checked)", r.relations_checked),
            Some(rel) => format!("failed at {rel}"),
        };
        rep.info.insert("relations".into(), verdict);
        if !r.passed() {
            code = 1;
        }
    }
    Ok(Outcome {
        json: serde_json::to_value(&rep).map_err(|e| e.to_string())?,
        report,
        code,
    })
}

fn relation_text(r: &braidcat::rep::RelationReport) -> String {
    match r.first_failure {
        None => format!(
            "braid relations: {} checked on {} generators, all hold\n",
            r.relations_checked, r.generators
        ),
        Some(rel) => format!("braid relations: FAILED at {rel}\n"),
    }
}

fn load_rep(path: &Path) -> Result<RepFile, String> {
    let rep: RepFile = load_json(path)?;
    rep.validate().map_err(|e| located(path, e))?;
    Ok(rep)
}

/// Generators in the cheapest exact form: monomial when possible.
enum Gens {
    Monomial(Vec<MonomialMatrix>),
    Dense(Vec<DenseMatrix>),
}

impl Gens {
    fn from_rep(rep: &RepFile) -> Result<Self, String> {
        if let Some(m) = rep.generators.iter().map(Matrix::as_monomial).collect::<Option<Vec<_>>>() {
            return Ok(Gens::Monomial(m.into_iter().cloned().collect()));
        }
        let n = rep
            .generators
            .iter()
            .fold(rep.conductor, |acc, g| num_lcm(acc, g.conductor()));
        rep.generators
            .iter()
            .map(|g| g.to_dense(n))
            .collect::<Result<Vec<_>, _>>()
            .map(Gens::Dense)
            .map_err(|e| e.to_string())
    }

    fn closure(&self, cap: usize, bound: Option<u64>) -> Result<(ClosureSummary, u128, Option<ScalarReport>), String> {
        match self {
            Gens::Monomial(g) => full(&MonomialMatrix::identity(g[0].dim()), g, cap, bound),
            Gens::Dense(g) => full(&DenseMatrix::identity(g[0].dim(), g[0].conductor()), g, cap, bound),
        }
    }

    fn projective(&self, cap: usize) -> Result<(ClosureSummary, u128), String> {
        let r = match self {
            Gens::Monomial(g) => proj(&MonomialMatrix::identity(g[0].dim()), g, cap)?,
            Gens::Dense(g) => proj(&DenseMatrix::identity(g[0].dim(), g[0].conductor()), g, cap)?,
        };
        Ok(r)
    }
}

fn num_lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn full<T: GroupElement + ScalarMatrix>(
    id: &T,
    gens: &[T],
    cap: usize,
    bound: Option<u64>,
) -> Result<(ClosureSummary, u128, Option<ScalarReport>), String> {
    let r: ClosureResult<T> = group_closure(id, gens, cap, bound.is_some()).map_err(|e| e.to_string())?;
    let scalars = match bound {
        Some(b) if r.is_complete() => Some(scalar_spectrum(&r, b).map_err(|e| e.to_string())?),
        _ => None,
    };
    Ok((r.summary(), r.elapsed_ms, scalars))
}

fn proj<T: ProjectiveNormalize>(id: &T, gens: &[T], cap: usize) -> Result<(ClosureSummary, u128), String> {
    let r = projective_closure(id, gens, cap, false).map_err(|e| e.to_string())?;
    Ok((r.summary(), r.elapsed_ms))
}

fn closure_outcome(
    command: &str,
    rep: &RepFile,
    summary: ClosureSummary,
    elapsed_ms: u128,
    cap: usize,
    scalars: Option<ScalarReport>,
    bound: Option<u64>,
) -> Outcome {
    let mut report = String::new();
    match summary.order {
        Some(o) => writeln!(report, "{command}: order {o} ({} BFS levels)", summary.levels).unwrap(),
        None => writeln!(report, "{command}: inconclusive, more than {cap} elements").unwrap(),
    }
    if let Some(s) = &scalars {
        let orders: Vec<String> = s
            .scalars
            .iter()
            .map(|e| e.order.map_or("∞".to_string(), |o| o.to_string()))
            .collect();
        writeln!(
            report,
            "scalars: {} of orders [{}], {} outside λ^{} = 1",
            s.scalars.len(),
            orders.join(", "),
            s.bound_violations,
            s.bound
        )
        .unwrap();
    }
    let mut json = json!({
        "command": command,
        "input": rep.spec,
        "status": summary.status,
        "order": summary.order,
        "generators": summary.generator_count,
        "elements_found": summary.elements_found,
        "levels": summary.levels,
        "cap": cap,
        "elapsed_ms": elapsed_ms,
    });
    if command != "projective-closure" {
        let obj = json.as_object_mut().unwrap();
        obj.insert("scalar_report".into(), serde_json::to_value(&scalars).unwrap_or(Value::Null));
        obj.insert("bound_checked".into(), json!(bound));
    }
    Outcome {
        json,
        report,
        code: if summary.status == ClosureStatus::Complete { 0 } else { INCONCLUSIVE },
    }
}
