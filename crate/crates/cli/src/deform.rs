use chartan::io::{
    detect_mode, mat2_to_json, parse_json, qphi_from_json, rep_from_json, rep_to_json, traces_from_json, RepFile,
};
use chartan::jets::{
    build_parabolic_deformation, character_jet_from_rep, extract_bilinear, factor_quadratic_form, lift_auto,
    lift_two_generator_character, obstruction_report, verify_jet_equation, JetError, Lift, LinearFactorization, Series,
};
use chartan::parallelogram::ParallelogramFunction;
use chartan::scalar::{ScalarMode, SeriesScalar};
use chartan::words::{random_word_up_to, trial_rng, Word};
use chartan::{Complex64, Gaussian, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::{print_json, read_file, CliError, DeformCommand};

fn jet_error(e: JetError) -> CliError {
    match e {
        JetError::Degenerate => CliError::Degenerate { kind: "DEGENERATE", reason: e.to_string() },
        JetError::UnsupportedReducible(_) => {
            CliError::Degenerate { kind: "UNSUPPORTED_REDUCIBLE", reason: e.to_string() }
        }
        JetError::Consistency(_) => CliError::CrossCheck(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn json_of(text: &str) -> Result<Value, CliError> {
    parse_json(text).map_err(|e| CliError::Input(e.to_string()))
}

pub fn run(cmd: &DeformCommand) -> Result<(), CliError> {
    match cmd {
        DeformCommand::Jet { rep, order, seed } => {
            let v = json_of(&read_file(rep)?)?;
            let out = match detect_mode(&v) {
                ScalarMode::ExactRational => jet::<Rational>(&v, *order, *seed),
                ScalarMode::GaussianRational => jet::<Gaussian>(&v, *order, *seed),
                _ => jet::<Complex64>(&v, *order, *seed),
            }?;
            print_json(&out);
        }
        DeformCommand::Obstruct { f1 } => {
            let (q, phi) = qphi_from_json(&json_of(&read_file(f1)?)?).map_err(|e| CliError::Input(e.to_string()))?;
            let f = ParallelogramFunction::free(q, phi).map_err(|e| CliError::Input(e.to_string()))?;
            let r = obstruction_report(&f);
            print_json(&json!({
                "order2": r.order2_extendable,
                "order3": r.order3_extendable,
                "rank": r.rank,
                "semantics": r.semantics,
            }));
        }
        DeformCommand::Parabolic { q, order, seed } => {
            let (q, _) = qphi_from_json(&json_of(&read_file(q)?)?).map_err(|e| CliError::Input(e.to_string()))?;
            let out = match factor_quadratic_form(&q).map_err(jet_error)? {
                LinearFactorization::Exact { l1, l2 } => parabolic(&q, &l1, &l2, *order, *seed, |z| z.clone()),
                LinearFactorization::Floating { l1, l2 } => parabolic(&q, &l1, &l2, *order, *seed, |z| {
                    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
                }),
            }?;
            print_json(&out);
        }
        DeformCommand::Lift { traces, order } => {
            let v = json_of(&read_file(traces)?)?;
            let out = match detect_mode(&v) {
                ScalarMode::ExactRational => {
                    let (order, [x, y, z]) = traces_with_order::<Rational>(&v, *order)?;
                    match lift_auto(&x, &y, &z, order).map_err(jet_error)? {
                        chartan::jets::LiftOutcome::Rational(l) => lift_json(&l),
                        chartan::jets::LiftOutcome::Gaussian(l) => lift_json(&l),
                        chartan::jets::LiftOutcome::Floating(l) => lift_json(&l),
                    }
                }
                ScalarMode::GaussianRational => {
                    let (order, [x, y, z]) = traces_with_order::<Gaussian>(&v, *order)?;
                    match lift_two_generator_character(&x, &y, &z, order) {
                        Ok(l) => lift_json(&l),
                        Err(JetError::NonSquareLeading { .. } | JetError::NeedsImaginaryUnit { .. }) => {
                            let f = |s: &Series<Gaussian>| {
                                s.map_scalar(|z| {
                                    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
                                })
                            };
                            lift_json(&lift_two_generator_character(&f(&x), &f(&y), &f(&z), order).map_err(jet_error)?)
                        }
                        Err(e) => return Err(jet_error(e)),
                    }
                }
                _ => {
                    let (order, [x, y, z]) = traces_with_order::<Complex64>(&v, *order)?;
                    lift_json(&lift_two_generator_character(&x, &y, &z, order).map_err(jet_error)?)
                }
            };
            print_json(&out);
        }
    }
    Ok(())
}

fn traces_with_order<S: SeriesScalar>(v: &Value, order: Option<usize>) -> Result<(usize, [Series<S>; 3]), CliError> {
    let (file_order, traces) = traces_from_json::<S>(v).map_err(|e| CliError::Input(e.to_string()))?;
    let order = order.unwrap_or(file_order);
    if order > file_order {
        return Err(CliError::Input(format!("--order {order} exceeds the order {file_order} of the trace file")));
    }
    Ok((order, traces))
}

fn jet<S: SeriesScalar>(v: &Value, order: Option<usize>, seed: u64) -> Result<Value, CliError> {
    let rep: RepFile<S> = rep_from_json(v).map_err(|e| CliError::Input(e.to_string()))?;
    let order = order.unwrap_or(rep.order);
    let jet = character_jet_from_rep(&rep.images, order).map_err(jet_error)?;
    let rank = jet.rank();
    let mut pairs: Vec<(Word, Word)> =
        (1..=rank).flat_map(|i| (i..=rank).map(move |j| (Word::generator(i), Word::generator(j)))).collect();
    for k in 0..8 {
        let mut r = trial_rng(seed, k);
        pairs.push((random_word_up_to(&mut r, rank, 6), random_word_up_to(&mut r, rank, 6)));
    }
    let mut checks = Vec::new();
    let mut all = true;
    for n in 1..=order {
        let c = verify_jet_equation(&jet, n, &pairs).map_err(jet_error)?;
        all &= c.holds;
        checks.push(json!({ "order": n, "holds": c.holds, "max_residual": c.max_residual }));
    }
    let generators: serde_json::Map<String, Value> = rep
        .names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let g = Word::generator(i + 1);
            (name.clone(), Value::Array((0..=order).map(|k| jet.g(k, &g).to_json()).collect()))
        })
        .collect();
    let mut out = json!({
        "mode": S::MODE,
        "order": order,
        "rank": rank,
        "trace_coefficients": generators,
        "jet_equation": checks,
        "passed": all,
    });
    if order >= 1 {
        let b = extract_bilinear(&jet, rank).map_err(jet_error)?;
        let rows: Vec<Value> = b.to_rows().iter().map(|r| Value::Array(r.iter().map(S::to_json).collect())).collect();
        out["bilinear"] = Value::Array(rows);
        out["bilinear_rank"] = json!(b.rank(chartan::scalar::default_tolerance()));
    }
    if !S::MODE.is_exact() {
        out["scalar"] = json!(S::MODE);
        out["mode"] = json!("floating");
    }
    Ok(out)
}

fn parabolic<T: Clone, S: SeriesScalar>(
    q: &chartan::parallelogram::QuadraticForm,
    l1: &[T],
    l2: &[T],
    order: usize,
    seed: u64,
    conv: impl Fn(&T) -> S,
) -> Result<Value, CliError> {
    let l1: Vec<S> = l1.iter().map(&conv).collect();
    let l2: Vec<S> = l2.iter().map(&conv).collect();
    let images = build_parabolic_deformation(&l1, &l2);
    let n = q.dim();
    let jet = character_jet_from_rep(&images, order.max(1)).map_err(jet_error)?;
    let tol = chartan::scalar::default_tolerance();
    let mut worst = 0.0f64;
    for k in 0..100 {
        let w = random_word_up_to(&mut trial_rng(seed, k), n, 12);
        let e: Vec<Rational> = w.abelianize(n).into_iter().map(|x| Rational::from_integer(x.into())).collect();
        let c = jet.coefficients(&w);
        let d0 = (c[0].clone() - S::from_i64(2)).magnitude();
        let d1 = (c[1].clone() - S::from_rational(&q.eval(&e))).magnitude();
        worst = worst.max(d0).max(d1);
    }
    let pass = if S::MODE.is_exact() { worst == 0.0 } else { worst <= tol };
    let rep = RepFile {
        order,
        names: (1..=n).map(|i| format!("a{i}")).collect(),
        images: images.iter().map(|m| m.map(|e| e.truncate(order as i64))).collect(),
    };
    Ok(json!({
        "rep": rep_to_json(&rep),
        "l1": l1.iter().map(S::to_json).collect::<Vec<_>>(),
        "l2": l2.iter().map(S::to_json).collect::<Vec<_>>(),
        "trace_check": if pass { "PASS" } else { "FAIL" },
        "max_residual": worst,
    }))
}

fn lift_json<S: SeriesScalar>(l: &Lift<S>) -> Value {
    let mut out = json!({
        "mode": S::MODE,
        "branch": l.branch,
        "order": l.order,
        "det_verified_order": l.det_verified_order,
        "A": mat2_to_json(&l.a, l.order),
        "B": mat2_to_json(&l.b, l.order),
        "residuals": l.residuals,
        "max_residual": l.residuals.max(),
    });
    if !S::MODE.is_exact() {
        out["scalar"] = json!(S::MODE);
        out["mode"] = json!("floating");
    }
    out
}
