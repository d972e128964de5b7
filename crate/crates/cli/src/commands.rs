use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use confluent_heun::cheq::{all_solutions, build_family, cheq_residual, cheq_residual_scale, spectral_roots, PolynomialSolution, QesCertificate};
use confluent_heun::reductions::schroedinger_form;
use confluent_heun::scalar::rational_to_f64;
use confluent_heun::twocenter::{
    demkov_search_for, density_grid, diophantine_enumerate, CartesianGrid, CenterConfig, DemkovSolution, Dim,
};
use confluent_heun::Error;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::format::{sig17, to_json};
use crate::rational::as_count;
use crate::{DemkovArgs, Failure, PotentialArgs};

/// Points at which a polynomial solution is substituted back into the
/// equation.
const RESIDUAL_POINTS: [f64; 5] = [-0.9, -0.3, 0.4, 1.7, 3.0];

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Variant name of a library error, e.g. `RootCountMismatch`.
fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

/// Report a library error as `{"error": {...}}` on the main output, exit 1.
fn fail_json(e: &Error, out: Option<&Path>) -> Result<(), Failure> {
    let v = json!({"error": {"kind": error_kind(e), "message": e.to_string()}});
    emit(&to_json(&v), out)?;
    Err(Failure::Domain(e.to_string()))
}

/// The QES degree `n` with `α = -n ε`, decided exactly.
pub fn qes_degree_exact(alpha: &BigRational, epsilon: &BigRational) -> Option<usize> {
    if epsilon.is_zero() {
        return alpha.is_zero().then_some(0);
    }
    as_count(&(-alpha / epsilon))
}

pub fn qes_check(alpha: &BigRational, epsilon: &BigRational, out: Option<&Path>) -> Result<(), Failure> {
    match qes_degree_exact(alpha, epsilon) {
        Some(n) => emit(&format!("n={n}\n"), out),
        None => {
            emit("not QES\n", out)?;
            Err(Failure::Domain(format!("alpha = {alpha}, epsilon = {epsilon} is not QES")))
        }
    }
}

fn solution_residual(s: &PolynomialSolution) -> f64 {
    let cert = s.certificate();
    let u = s.to_monomial();
    RESIDUAL_POINTS
        .iter()
        .map(|&z| {
            let scale = cheq_residual_scale(&cert, s.q, &u, z);
            if scale > 0.0 {
                cheq_residual(&cert, s.q, &u, z).abs() / scale
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

fn solution_json(s: &PolynomialSolution) -> Value {
    json!({
        "j": s.j,
        "q": s.q,
        "n": s.n,
        "gamma": s.gamma,
        "delta": s.delta,
        "epsilon": s.epsilon,
        "coeffs": s.to_monomial().coeffs(),
        "shifted_coeffs": s.shifted_coeffs(),
        "residual": solution_residual(s),
    })
}

pub fn poly(
    gamma: &BigRational,
    delta: &BigRational,
    epsilon: &BigRational,
    n: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let fam = build_family(gamma.clone(), delta.clone(), epsilon.clone(), n);
    let polys: Vec<Value> = fam
        .polys()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            json!({
                "k": k,
                "coeffs": p.coeffs().iter().map(rational_to_f64).collect::<Vec<_>>(),
                "coeffs_exact": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let roots = match spectral_roots(&fam) {
        Ok(r) => r,
        Err(e) => return fail_json(&e, out),
    };
    let sols = match all_solutions(&fam) {
        Ok(s) => s,
        Err(e) => return fail_json(&e, out),
    };
    let root_list: Vec<Value> = roots
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &q)| json!({"j": i + 1, "q": q, "residual": fam.relative_residual(q)}))
        .collect();
    let v = json!({
        "input": {
            "gamma": gamma.to_string(),
            "delta": delta.to_string(),
            "epsilon": epsilon.to_string(),
            "n": n,
        },
        "polynomials": polys,
        "roots": root_list,
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
    });
    emit(&to_json(&v), out)
}

fn demkov_json(s: &DemkovSolution) -> Value {
    let (j_r, j_a) = s.root_indices();
    json!({
        "n1": s.qn.n1,
        "n2": s.qn.n2,
        "m": s.qn.m,
        "case_r": s.case_r.map(|c| c.to_string()),
        "case_a": s.case_a.map(|c| c.to_string()),
        "branch_r": s.branch_r.label(),
        "branch_a": s.branch_a.label(),
        "energy": s.energy,
        "energy_exact": s.energy_exact.to_string(),
        "lambda": s.lambda,
        "R": s.r,
        "q_r": s.q_r,
        "q_a": s.q_a,
        "j_r": j_r,
        "j_a": j_a,
        "radial_poly": solution_json(&s.radial),
        "angular_poly": solution_json(&s.angular),
    })
}

pub fn demkov(a: &DemkovArgs, out: Option<&Path>) -> Result<(), Failure> {
    let dim = Dim::from_int(a.dim).map_err(|e| Failure::Usage(e.to_string()))?;
    let config = CenterConfig::new(a.z1.clone(), a.z2.clone(), dim).map_err(|e| Failure::Usage(e.to_string()))?;
    if a.density.is_some() && (a.points == 0 || !(a.half_width > 0.0)) {
        return Err(Failure::Usage("density grid needs --points > 0 and --half-width > 0".into()));
    }
    let qns: Vec<_> = diophantine_enumerate(&config, a.n_max)
        .into_iter()
        .filter(|q| a.n1.map_or(true, |v| q.n1 == v))
        .filter(|q| a.n2.map_or(true, |v| q.n2 == v))
        .filter(|q| a.m.map_or(true, |v| q.m == Some(v)))
        .collect();
    let report = demkov_search_for(&config, &qns, a.n_max);
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let v = json!({
        "config": {
            "z1": config.z1.to_string(),
            "z2": config.z2.to_string(),
            "dim": a.dim,
        },
        "n_max": a.n_max,
        "notes": report.notes,
        "solutions": report.solutions.iter().map(demkov_json).collect::<Vec<_>>(),
    });
    emit(&to_json(&v), out)?;

    let Some(path) = &a.density else {
        return Ok(());
    };
    let Some(sol) = report.solutions.get(a.solution) else {
        return Err(Failure::Domain(format!(
            "no solution #{} to sample ({} found)",
            a.solution,
            report.solutions.len()
        )));
    };
    let grid = CartesianGrid::cube(dim, a.half_width, a.points);
    let dens = density_grid(sol, &grid).map_err(|e| Failure::Domain(e.to_string()))?;
    let d = a.dim as usize;
    let mut csv = String::new();
    let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).chain(["rho".to_string()]).collect();
    csv.push_str(&header.join(","));
    csv.push('\n');
    for (p, rho) in dens.points.iter().zip(&dens.rho) {
        for x in p {
            let _ = write!(csv, "{},", sig17(*x));
        }
        csv.push_str(&sig17(*rho));
        csv.push('\n');
    }
    fs::write(path, csv).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

pub fn potential(a: &PotentialArgs, out: Option<&Path>) -> Result<(), Failure> {
    if !(a.x_min > 0.0) || !(a.x_max > a.x_min) || a.points < 2 {
        return Err(Failure::Usage("need 0 < x-min < x-max and at least 2 points".into()));
    }
    let (g, d, e, q) = (
        rational_to_f64(&a.gamma),
        rational_to_f64(&a.delta),
        rational_to_f64(&a.epsilon),
        rational_to_f64(&a.q),
    );
    let form = schroedinger_form(&QesCertificate::new(a.n, g, d, e), q);
    if form.singular_at_origin(1e-14) {
        eprintln!("note: V(x) is singular as x -> 0+");
    }
    let mut csv = String::from("x,V\n");
    for k in 0..a.points {
        let x = a.x_min + (a.x_max - a.x_min) * k as f64 / (a.points - 1) as f64;
        let _ = writeln!(csv, "{},{}", sig17(x), sig17(form.potential(x)));
    }
    emit(&csv, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn exact_qes_degree() {
        assert_eq!(qes_degree_exact(&r("8"), &r("-4")), Some(2));
        assert_eq!(qes_degree_exact(&r("0"), &r("3")), Some(0));
        assert_eq!(qes_degree_exact(&r("1"), &r("1")), None);
        assert_eq!(qes_degree_exact(&r("1"), &r("3")), None);
        assert_eq!(qes_degree_exact(&r("0"), &r("0")), Some(0));
        assert_eq!(qes_degree_exact(&r("10/3"), &r("-5/3")), Some(2));
    }

    #[test]
    fn error_kinds() {
        let e = Error::RootCountMismatch { expected: 3, found: 1 };
        assert_eq!(error_kind(&e), "RootCountMismatch");
        assert_eq!(error_kind(&Error::EliminationDegenerate), "EliminationDegenerate");
    }
}
