//! Subcommand implementations. Each returns a [`Done`] whose `result` becomes
//! the report body, or a [`Failure`] when no mathematical verdict exists.

use serde_json::{json, Value};
use witt_core::algebra::verify_jacobi;
use witt_core::derivations::{
    check_windowed_classification, classified_basis, compare_spaces, is_delta_derivation, solve_halfder_space,
    DeltaValue, WindowVerdict,
};
use witt_core::group::coset_decompose;
use witt_core::sampling::Lcg64;
use witt_core::tpa::{classify_tpp, homlie_check, is_tpp, random_product, verify_mutation_consistency, HomLieForm};
use witt_core::wittfn::WittKind;
use witt_core::{AlgebraVector, CasePartition, Error, GroupElement, SubgroupTable, Verdict, Window, WittFunction};

use crate::input::{load_instance, load_product, parse_map, product_json, Instance};
use crate::report::Status;
use crate::{Command, TppCommand};

const DEFAULT_DEGREES: &str = "-3..3";

#[derive(Debug)]
pub struct Done {
    pub status: Status,
    pub case: Option<String>,
    pub result: Value,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::Error,
            message: message.into(),
        }
    }
}

/// Rejections of the mathematics (invalid f, unverified product, broken
/// internal consistency) are failures; everything else is bad input.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidFunction(_) | Error::Unverified(_) | Error::Internal(_) => Status::Fail,
            _ => Status::Error,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::input(message)
    }
}

type Outcome = Result<Done, Failure>;

pub fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Validate { instance } => validate(&load_instance(instance)?),
        Command::Classify { instance } => classify(&load_instance(instance)?),
        Command::Derivations {
            instance,
            degrees,
            radius,
        } => derivations(&load_instance(instance)?, degrees.as_deref(), *radius),
        Command::Tpp { command } => match command {
            TppCommand::Verify {
                instance,
                product,
                radius,
            } => tpp_verify(&load_instance(instance)?, product, *radius),
            TppCommand::Random {
                instance,
                trials,
                seed,
                radius,
            } => tpp_random(&load_instance(instance)?, *trials, *seed, *radius),
            TppCommand::Classify {
                instance,
                product,
                b,
                radius,
            } => tpp_classify(&load_instance(instance)?, product, b.as_deref(), *radius),
        },
        Command::Homlie {
            instance,
            map,
            radius,
            literal_form,
        } => {
            let form = if *literal_form {
                HomLieForm::Literal
            } else {
                HomLieForm::Cyclic
            };
            homlie(&load_instance(instance)?, map, *radius, form)
        }
        Command::Report {
            instance,
            trials,
            seed,
            radius,
        } => report(&load_instance(instance)?, *trials, *seed, *radius),
    }
}

fn window_json(f: &WittFunction, w: &Window) -> Value {
    if f.group().is_finite() {
        Value::Null
    } else {
        json!(w)
    }
}

fn lits(v: &[GroupElement]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn validate(inst: &Instance) -> Outcome {
    let f = &inst.f;
    let validation = f.validate()?;
    if !validation.valid {
        return Ok(Done {
            status: Status::Fail,
            case: None,
            result: json!({ "validation": validation }),
        });
    }
    let part = f.classify()?;
    let window = inst.window(None, 4);
    let jacobi = verify_jacobi(f, &window)?;
    Ok(Done {
        status: jacobi.verdict.into(),
        case: Some(part.case.to_string()),
        result: json!({
            "validation": validation,
            "window": window_json(f, &window),
            "jacobi": jacobi,
        }),
    })
}

fn partition_json(f: &WittFunction, part: &CasePartition) -> Result<Value, Failure> {
    let gamma0 = match &part.gamma0 {
        SubgroupTable::Finite { elements, .. } => {
            json!({ "elements": elements.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
        SubgroupTable::Kernel { form, .. } => json!({ "kernel_of": form }),
    };
    let cosets = if f.group().is_finite() {
        let cs = coset_decompose(f.group(), &part.gamma0)?;
        json!(cs
            .iter()
            .map(|c| json!({
                "representative": c.representative.to_string(),
                "elements": lits(&c.elements),
                "f": f.evaluate(&c.representative).map(|x| x.to_string()).unwrap_or_default(),
            }))
            .collect::<Vec<_>>())
    } else {
        Value::Null
    };
    Ok(json!({
        "case": part.case,
        "c": part.c,
        "gamma0": gamma0,
        "cosets": cosets,
        "tau": part.tau.as_ref().map(|t| t.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>()),
        "coset_representatives": part.coset_reps.as_ref().map(|r| lits(r)),
    }))
}

pub fn classify(inst: &Instance) -> Outcome {
    let f = &inst.f;
    let validation = f.validate()?;
    if !validation.valid {
        return Ok(Done {
            status: Status::Fail,
            case: None,
            result: json!({ "validation": validation }),
        });
    }
    let part = f.classify()?;
    let kind = match f.kind() {
        WittKind::Table(_) => "table",
        WittKind::Additive(_) => "additive",
    };
    let mut result = partition_json(f, &part)?;
    result["kind"] = json!(kind);
    Ok(Done {
        status: Status::Pass,
        case: Some(part.case.to_string()),
        result,
    })
}

fn parse_degrees(f: &WittFunction, range: &str) -> Result<Vec<GroupElement>, Failure> {
    let bad = || Failure::input(format!("malformed degree range `{range}` (expected a..b)"));
    let (a, b) = range.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    let reach = a.unsigned_abs().max(b.unsigned_abs());
    Ok(f.group()
        .window_elements(&Window::new(reach))
        .into_iter()
        .filter(|g| g.free().iter().all(|x| (a..=b).contains(x)))
        .collect())
}

pub fn derivations(inst: &Instance, degrees: Option<&str>, radius: Option<u64>) -> Outcome {
    let f = &inst.f;
    let part = f.classify()?;
    let case = Some(part.case.to_string());
    if f.group().is_finite() {
        if degrees.is_some() {
            return Err(Failure::input("--degrees applies to infinite groups only"));
        }
        let solved = solve_halfder_space(f)?;
        let family = classified_basis(&part, &Window::new(0))?;
        let equivalence = compare_spaces(&solved, &family.maps)?;
        let status = if equivalence.equivalent {
            Status::Pass
        } else {
            Status::Fail
        };
        return Ok(Done {
            status,
            case,
            result: json!({
                "dim": solved.dim,
                "unknowns": solved.unknowns,
                "basis": solved.basis,
                "family": { "size": family.maps.len(), "degrees": lits(&family.parameter_index) },
                "equivalence": equivalence,
            }),
        });
    }
    let degrees = parse_degrees(f, degrees.unwrap_or(DEFAULT_DEGREES))?;
    let window = inst.window(radius, 8);
    let (verdict, per_degree) = check_windowed_classification(f, &degrees, &window)?;
    let status = match verdict {
        WindowVerdict::ConsistentWithClassification => Status::Pass,
        WindowVerdict::Discrepancy => Status::Fail,
        WindowVerdict::Inconclusive => Status::Inconclusive,
    };
    let rows: Vec<Value> = per_degree
        .iter()
        .map(|d| {
            json!({
                "degree": d.solution.degree,
                "dim": d.solution.space.dim,
                "equations": d.solution.equations,
                "witnessable": d.solution.witnessable,
                "notes": d.solution.notes,
                "unknowns": d.solution.space.unknowns,
                "basis": d.solution.space.basis,
                "equivalence": d.equivalence,
                "verdict": d.verdict,
            })
        })
        .collect();
    Ok(Done {
        status,
        case,
        result: json!({ "window": window, "verdict": verdict, "degrees": rows }),
    })
}

pub fn tpp_verify(inst: &Instance, product: &str, radius: Option<u64>) -> Outcome {
    let f = &inst.f;
    let p = load_product(f, product)?;
    let case = f.classify()?.case.to_string();
    let window = inst.window(radius, 6);
    let r = is_tpp(f, &p, &window)?;
    Ok(Done {
        status: r.verdict.into(),
        case: Some(case),
        result: json!({
            "product": product_json(&p),
            "window": window_json(f, &window),
            "axioms": r.axioms,
            "derivation_route": r.derivation_route,
            "failing_generator": r.failing_generator,
        }),
    })
}

pub fn tpp_random(inst: &Instance, trials: usize, seed: Option<u64>, radius: Option<u64>) -> Outcome {
    let f = &inst.f;
    let part = f.classify()?;
    let seed = seed.or(inst.seed).unwrap_or(0);
    let window = inst.window(radius, 6);
    let mut rng = Lcg64::new(seed);
    let mut overall = Verdict::Pass;
    let mut draws = Vec::with_capacity(trials);
    let (mut passed, mut failed, mut inconclusive) = (0usize, 0usize, 0usize);
    for trial in 0..trials {
        let p = random_product(f, &part, &mut rng)?;
        let r = is_tpp(f, &p, &window)?;
        let (roundtrip, roundtrip_error) = if f.group().is_finite() {
            match classify_tpp(f, &p) {
                Ok(c) if Some(&c.parameters) == p.parameters().as_ref() => (Verdict::Pass, None),
                Ok(c) => (Verdict::Fail, Some(format!("recovered {:?}", c.parameters))),
                Err(e) => (Verdict::Fail, Some(e.to_string())),
            }
        } else {
            let b = match p.parameters() {
                Some(witt_core::tpa::RecoveredParameters::Mutation { b }) => b,
                _ => AlgebraVector::zero(),
            };
            (verify_mutation_consistency(f, &p, &b, &window)?.verdict, None)
        };
        let v = r.verdict.and(r.derivation_route).and(roundtrip);
        match v {
            Verdict::Pass => passed += 1,
            Verdict::Fail => failed += 1,
            Verdict::Inconclusive => inconclusive += 1,
        }
        overall = overall.and(v);
        draws.push(json!({
            "trial": trial,
            "product": product_json(&p),
            "verdict": v,
            "commutative": r.axioms.commutative.verdict,
            "associative": r.axioms.associative.verdict,
            "transposed_leibniz": r.axioms.transposed_leibniz.verdict,
            "witness": r.axioms.transposed_leibniz.witness.as_deref().map(lits)
                .or_else(|| r.axioms.associative.witness.as_deref().map(lits))
                .or_else(|| r.axioms.commutative.witness.as_deref().map(lits)),
            "derivation_route": r.derivation_route,
            "roundtrip": roundtrip,
            "roundtrip_error": roundtrip_error,
        }));
    }
    Ok(Done {
        status: overall.into(),
        case: Some(part.case.to_string()),
        result: json!({
            "seed": seed,
            "trials": trials,
            "window": window_json(f, &window),
            "passed": passed,
            "failed": failed,
            "inconclusive": inconclusive,
            "draws": draws,
        }),
    })
}

pub fn tpp_classify(inst: &Instance, product: &str, b: Option<&str>, radius: Option<u64>) -> Outcome {
    let f = &inst.f;
    let p = load_product(f, product)?;
    let case = f.classify()?.case.to_string();
    if f.group().is_finite() {
        let c = classify_tpp(f, &p)?;
        return Ok(Done {
            status: Status::Pass,
            case: Some(case),
            result: json!(c),
        });
    }
    let b = b.ok_or_else(|| Failure::input("infinite group: pass the expected mutation vector with --b"))?;
    let b = AlgebraVector::parse(f.group(), b)?;
    let window = inst.window(radius, 6);
    let r = verify_mutation_consistency(f, &p, &b, &window)?;
    Ok(Done {
        status: r.verdict.into(),
        case: Some(case),
        result: json!({ "window": window, "b": b, "consistency": r }),
    })
}

pub fn homlie(inst: &Instance, map: &str, radius: Option<u64>, form: HomLieForm) -> Outcome {
    let f = &inst.f;
    let window = inst.window(radius, 4);
    let domain = f.group().padded_elements(&window);
    let phi = parse_map(f, map, &domain)?;
    let case = f.classify()?.case.to_string();
    let r = homlie_check(f, &phi, &window, form)?;
    let half = is_delta_derivation(f, &phi, &DeltaValue::half(), &window)?;
    Ok(Done {
        status: r.verdict.into(),
        case: Some(case),
        result: json!({
            "map": map,
            "form": form,
            "window": window_json(f, &window),
            "homlie": r,
            "half_derivation": half.verdict,
        }),
    })
}

pub fn report(inst: &Instance, trials: usize, seed: Option<u64>, radius: Option<u64>) -> Outcome {
    let f = &inst.f;
    let mut acc = Sections::default();
    push(&mut acc, "validate", validate(inst))?;
    if acc.status == Verdict::Pass {
        push(&mut acc, "classify", classify(inst))?;
        push(&mut acc, "derivations", derivations(inst, None, radius))?;
        push(&mut acc, "tpp_random", tpp_random(inst, trials, seed, radius))?;

        let part = f.classify()?;
        let window = inst.window(radius, 3);
        let family = classified_basis(&part, &window)?;
        let mut checks = Vec::new();
        let mut homlie_verdict = Verdict::Pass;
        for (g, m) in family.parameter_index.iter().zip(&family.maps) {
            if m.scalar_value(f.group()).is_some() {
                continue;
            }
            let r = homlie_check(f, m, &window, HomLieForm::Cyclic)?;
            homlie_verdict = homlie_verdict.and(r.verdict);
            checks.push(json!({ "degree": g, "verdict": r.verdict, "witness": r.witness }));
        }
        push(
            &mut acc,
            "homlie_family",
            Ok(Done {
                status: homlie_verdict.into(),
                case: None,
                result: json!({ "window": window_json(f, &window), "maps": checks }),
            }),
        )?;
    }
    Ok(Done {
        status: acc.status.into(),
        case: acc.case,
        result: Value::Object(acc.sections),
    })
}

struct Sections {
    sections: serde_json::Map<String, Value>,
    status: Verdict,
    case: Option<String>,
}

impl Default for Sections {
    fn default() -> Self {
        Self {
            sections: serde_json::Map::new(),
            status: Verdict::Pass,
            case: None,
        }
    }
}

fn push(acc: &mut Sections, name: &str, outcome: Outcome) -> Result<(), Failure> {
    let done = outcome?;
    let v = match done.status {
        Status::Pass => Verdict::Pass,
        Status::Fail => Verdict::Fail,
        Status::Inconclusive => Verdict::Inconclusive,
        Status::Error => return Err(Failure::input(format!("{name}: error"))),
    };
    acc.status = acc.status.and(v);
    acc.case = acc.case.take().or(done.case);
    acc.sections
        .insert(name.into(), json!({ "verdict": done.status, "result": done.result }));
    Ok(())
}
