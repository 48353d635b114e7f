use std::path::Path;

use chartan::homology::{compute_h1, e_space_basis, smoothness_verdict, F2Witness};
use chartan::linalg::Matrix;
use chartan::parallelogram::descent_solve;
use chartan::words::Presentation;
use chartan::Rational;
use serde_json::{json, Value};

use crate::{emit, print_json, read_file, CliError};

pub fn run(path: &Path, witness: Option<&Path>, seed: u64, as_json: bool) -> Result<(), CliError> {
    let text = read_file(path)?;
    let p = Presentation::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let witness = match witness {
        Some(w) => {
            Some(F2Witness::parse(&read_file(w)?, &p).map_err(|e| CliError::Input(format!("{}: {e}", w.display())))?)
        }
        None => None,
    };

    let h = compute_h1(&p);
    let r = h.h1_rank;
    let dim_q = r * (r + 1) / 2;
    let (dim_e, _) = e_space_basis(&h);
    let dim_p = dim_q + dim_e;
    let descent = descent_solve(&p).dimension;
    if descent != dim_p {
        return Err(CliError::CrossCheck(format!(
            "descent kernel has dimension {descent}, closed form gives dim Q + dim E = {dim_q} + {dim_e} = {dim_p}"
        )));
    }

    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let omega_rows: Vec<Vec<Rational>> =
        h.c_classes.iter().map(|c| pairs.iter().map(|&(i, j)| c.coefficient(i, j)).collect()).collect();
    let omega_dim = if omega_rows.is_empty() || pairs.is_empty() {
        0
    } else {
        Matrix::from_rows(omega_rows, pairs.len()).rank(0.0)
    };
    let verdict = smoothness_verdict(&p, witness.as_ref());
    let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
    let relators: Vec<Value> = h
        .reduction
        .relators
        .iter()
        .enumerate()
        .map(|(i, rel)| json!({ "word": p.print_word(&rel.word), "trivial_abelianization": i >= h.ell() }))
        .collect();

    if as_json {
        print_json(&json!({
            "presentation": {
                "generators": p.generator_names(),
                "relators": p.relators().iter().map(|w| p.print_word(w)).collect::<Vec<_>>(),
            },
            "h1": { "rank": r, "torsion": torsion },
            "dim_Q": dim_q,
            "dim_E": dim_e,
            "dim_P": dim_p,
            "descent_dim": descent,
            "omega_dim": omega_dim,
            "h2_generator_upper_bound": h.h2_generator_bound(),
            "reduced_relators": relators,
            "smoothness": { "verdict": verdict.verdict, "reason": verdict.reason },
            "seed": seed,
            "version": env!("CARGO_PKG_VERSION"),
        }));
    } else {
        emit(p.to_string().trim_end());
        let tors: String = torsion.iter().map(|t| format!(" ⊕ Z/{t}")).collect();
        emit(&format!("H1 = Z^{r}{tors}"));
        emit(&format!("dim Q = {dim_q}, dim E = {dim_e}, dim P = {dim_p} (descent kernel {descent})"));
        emit(&format!("omega_dim = {omega_dim}, H2 generators ≤ {}", h.h2_generator_bound()));
        for rel in relators {
            let trivial = rel["trivial_abelianization"].as_bool() == Some(true);
            emit(&format!(
                "  reduced relator {}{}",
                rel["word"].as_str().unwrap_or(""),
                if trivial { "  (in [F,F])" } else { "" }
            ));
        }
        emit(&format!("verdict: {} ({})", verdict.verdict, verdict.reason));
    }
    Ok(())
}
