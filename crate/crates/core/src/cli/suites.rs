//! Built-in verification suites run by `verify --suite NAME`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::output::Check;
use crate::calculus::contour_residue;
use crate::context::EvalContext;
use crate::error::Result;
use crate::selberg::{
    binomial_identity_check, even_block_series, even_nontrivial_ds0, even_nontrivial_superzeta,
    even_raw_series, even_regularized_product, even_residue, kleinian_constants, odd_coefficients,
    odd_nontrivial_ds0, odd_nontrivial_from_poles, odd_nontrivial_superzeta,
    odd_regularized_product, KleinianParams, ScatteringPole, SelbergSpecEven, SelbergSpecOdd,
};
use crate::special::gamma::{gamma, sqrt_two_pi};
use crate::special::{hurwitz_zeta, hurwitz_zeta_ds0, multiple_hurwitz_zeta};
use crate::superzeta::{
    i_residue, i_residue_numeric, regularized_det, superzeta_continued, superzeta_direct,
};
use crate::zeta_type::{f_value, FunctionModel};

pub const SUITES: [&str; 10] = [
    "lerch",
    "hurwitz",
    "multizeta",
    "residues",
    "overlap",
    "determinant",
    "binomial",
    "selberg-odd",
    "selberg-even",
    "kleinian",
];

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn dp2() -> FunctionModel {
    FunctionModel::dirichlet_polynomial(2.0).expect("a = 2 is valid")
}

pub fn run_suite(name: &str, ctx: &EvalContext) -> Option<Result<Vec<Check>>> {
    let result = match name {
        "lerch" => lerch(ctx),
        "hurwitz" => hurwitz(),
        "multizeta" => multizeta(),
        "residues" => residues(ctx),
        "overlap" => overlap(ctx),
        "determinant" => determinant(ctx),
        "binomial" => Ok(binomial()),
        "selberg-odd" => selberg_odd(ctx),
        "selberg-even" => selberg_even(ctx),
        "kleinian" => kleinian(),
        _ => return None,
    };
    Some(result)
}

fn lerch(ctx: &EvalContext) -> Result<Vec<Check>> {
    let mut zs: Vec<Complex64> = (1..=20).map(|k| cx(0.5 * k as f64, 0.0)).collect();
    zs.extend([cx(2.0, 1.0), cx(3.0, 2.0)]);
    zs.into_iter()
        .map(|z| {
            let lhs = (-hurwitz_zeta_ds0(z, ctx)?).exp();
            let rhs = sqrt_two_pi() / gamma(z)?;
            Ok(Check::new(format!("z={z}"), rel(lhs, rhs), 1e-9))
        })
        .collect()
}

fn hurwitz() -> Result<Vec<Check>> {
    let zeta2 = PI * PI / 6.0;
    let cases = [
        ("zeta(2)", cx(2.0, 0.0), cx(1.0, 0.0), cx(zeta2, 0.0)),
        (
            "zeta(4)",
            cx(4.0, 0.0),
            cx(1.0, 0.0),
            cx(PI.powi(4) / 90.0, 0.0),
        ),
        (
            "zeta_H(2,1/2)",
            cx(2.0, 0.0),
            cx(0.5, 0.0),
            cx(3.0 * zeta2, 0.0),
        ),
        (
            "zeta(-1)",
            cx(-1.0, 0.0),
            cx(1.0, 0.0),
            cx(-1.0 / 12.0, 0.0),
        ),
        (
            "zeta_H(0,z)",
            cx(0.0, 0.0),
            cx(2.5, 1.5),
            cx(0.5 - 2.5, -1.5),
        ),
        (
            "zeta_H(-1,z)",
            cx(-1.0, 0.0),
            cx(2.0, 0.0),
            cx(-13.0 / 12.0, 0.0),
        ),
    ];
    let mut checks = Vec::new();
    for (name, s, z, expected) in cases {
        checks.push(Check::new(name, rel(hurwitz_zeta(s, z)?, expected), 1e-12));
    }
    // shift identity zeta_H(s, z) - zeta_H(s, z + 1) = z^{-s}
    for &(s, z) in &[(cx(0.3, 2.0), cx(0.7, -1.0)), (cx(-2.5, 0.5), cx(3.0, 4.0))] {
        let lhs = hurwitz_zeta(s, z)? - hurwitz_zeta(s, z + 1.0)?;
        let rhs = (-s * z.ln()).exp();
        checks.push(Check::new(
            format!("shift s={s} z={z}"),
            rel(lhs, rhs),
            1e-11,
        ));
    }
    Ok(checks)
}

fn multizeta() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &s in &[cx(-1.5, 0.0), cx(0.5, 1.0), cx(2.5, 0.0), cx(3.0, -2.0)] {
        for &z in &[cx(0.5, 0.0), cx(1.5, 2.0), cx(4.0, 0.0)] {
            let lhs = multiple_hurwitz_zeta(2, s, z)?;
            let rhs = hurwitz_zeta(s - 1.0, z)? + (1.0 - z) * hurwitz_zeta(s, z)?;
            checks.push(Check::new(
                format!("zeta_2 s={s} z={z}"),
                rel(lhs, rhs),
                1e-10,
            ));
        }
    }
    let mut factorial = 1.0;
    for m in 1..=4usize {
        if m > 1 {
            factorial *= (m - 1) as f64;
        }
        let z = cx(1.3, 0.2);
        let res = contour_residue(
            |s| multiple_hurwitz_zeta(m, s, z),
            cx(m as f64, 0.0),
            0.25,
            64,
        )?;
        checks.push(Check::new(
            format!("res zeta_{m} at s={m}"),
            (res - 1.0 / factorial).norm(),
            1e-8,
        ));
    }
    Ok(checks)
}

fn residues(ctx: &EvalContext) -> Result<Vec<Check>> {
    let model = dp2();
    let z = cx(2.0, 0.0);
    (1..=3)
        .map(|n| {
            let numeric = i_residue_numeric(&model, n, z, ctx)?;
            let exact = i_residue(&model, n, z, ctx)?;
            Ok(Check::new(
                format!("res I at s={n}"),
                (numeric - exact).norm(),
                1e-5,
            ))
        })
        .collect()
}

fn overlap(ctx: &EvalContext) -> Result<Vec<Check>> {
    let model = dp2();
    let zeros = model.zeros.clone().expect("lattice attached");
    let direct_ctx = ctx.with_truncation(100_000);
    let mut checks = Vec::new();
    for &s in &[1.5, 2.0, 2.5] {
        for &z in &[cx(1.0, 0.0), cx(2.0, 0.0), cx(1.0, 1.0)] {
            let s = cx(s, 0.0);
            let direct = superzeta_direct(&zeros, s, z, &direct_ctx)?.value;
            let continued = superzeta_continued(&model, s, z, s.re + 1.0, ctx)?.value;
            checks.push(Check::new(
                format!("s={s} z={z}"),
                rel(continued, direct),
                1e-6,
            ));
        }
    }
    let reference = 2.0 * 2f64.ln().powi(2);
    let at = superzeta_continued(&model, cx(2.0, 0.0), cx(1.0, 0.0), 3.0, ctx)?.value;
    checks.push(Check::new(
        "Z(2,1)=2 ln^2 2",
        rel(at, cx(reference, 0.0)),
        1e-6,
    ));
    Ok(checks)
}

fn determinant(ctx: &EvalContext) -> Result<Vec<Check>> {
    let model = dp2();
    let mut checks = Vec::new();
    for &z in &[cx(2.0, 0.0), cx(3.0, 0.0), cx(5.0, 2.0), cx(10.0, 0.0)] {
        let d = regularized_det(&model, z, ctx)?;
        let f = f_value(&model, z, ctx)?;
        checks.push(Check::new(format!("D=f z={z}"), rel(d, f), 1e-6));
    }
    let rg = FunctionModel::reciprocal_gamma();
    for &z in &[cx(1.5, 0.0), cx(3.0, 1.0)] {
        let d = regularized_det(&rg, z, ctx)?;
        let expected = sqrt_two_pi() / gamma(z)?;
        checks.push(Check::new(
            format!("D=sqrt(2pi)/Gamma z={z}"),
            rel(d, expected),
            1e-6,
        ));
    }
    Ok(checks)
}

fn binomial() -> Vec<Check> {
    let mut failures = [0usize; 3];
    let mut cases = 0;
    for n in 1..=8 {
        for k in 0..=n.min(8) {
            for m in 0..=12 {
                let (a, b, c) = binomial_identity_check(n, k, m);
                cases += 1;
                for (slot, ok) in failures.iter_mut().zip([a, b, c]) {
                    if !ok {
                        *slot += 1;
                    }
                }
            }
        }
    }
    failures
        .iter()
        .enumerate()
        .map(|(i, &f)| Check::exact(format!("identity {} over {cases} cases", i + 1), f == 0))
        .collect()
}

pub fn odd_fixture() -> SelbergSpecOdd {
    SelbergSpecOdd {
        n: 1,
        k: 0,
        d_c_chi: 2,
        d_sigma_k: 1,
        e_dk: 3,
        a_k: 2.0,
        scattering_poles: vec![ScatteringPole {
            q: cx(0.5, 0.0),
            b: 2,
        }],
    }
}

pub fn even_fixture(n: usize) -> SelbergSpecEven {
    SelbergSpecEven {
        n,
        k: n - 1,
        d_c_chi: 1,
        d_sigma_k: 2,
        d_dk: 1,
        dim_v_chi: 1,
        euler_char: 2,
        scattering_poles: vec![ScatteringPole {
            q: cx(0.25, 0.0),
            b: 1,
        }],
    }
}

fn selberg_odd(ctx: &EvalContext) -> Result<Vec<Check>> {
    let spec = odd_fixture();
    let model = dp2();
    let z = cx(2.5, 0.5);
    let mut checks = Vec::new();
    let res = contour_residue(
        |s| Ok(odd_nontrivial_superzeta(&spec, &model, s, z, ctx)?.value),
        cx(1.0, 0.0),
        0.25,
        32,
    )?;
    let beta = odd_coefficients(&spec).1;
    checks.push(Check::new(
        "residue at s=1 equals beta",
        (res - beta).norm(),
        1e-6,
    ));
    for &s in &[cx(-0.5, 0.3), cx(2.5, 0.0)] {
        let a = odd_nontrivial_superzeta(&spec, &model, s, z, ctx)?.value;
        let b = odd_nontrivial_from_poles(&spec, &model, s, z, ctx)?.value;
        checks.push(Check::new(
            format!("Hurwitz forms agree s={s}"),
            rel(a, b),
            1e-9,
        ));
    }
    for &z in &[cx(2.5, 0.5), cx(4.0, -1.0)] {
        let lhs = (-odd_nontrivial_ds0(&spec, &model, z, ctx)?.value).exp();
        let rhs = odd_regularized_product(&spec, f_value(&model, z, ctx)?, z)?;
        checks.push(Check::new(format!("product z={z}"), rel(lhs, rhs), 1e-4));
    }
    Ok(checks)
}

fn selberg_even(ctx: &EvalContext) -> Result<Vec<Check>> {
    let model = dp2();
    let z = cx(3.2, 0.4);
    let mut checks = Vec::new();
    for n in 1..=2 {
        for k in 0..n {
            let s = cx(2.0 * n as f64 + 1.5, 0.0);
            let raw = even_raw_series(n, k, s, z)?.value;
            let blocks = even_block_series(n, k, s, z)?;
            checks.push(Check::new(
                format!("rewriting n={n} k={k}"),
                rel(blocks, raw),
                1e-8,
            ));
        }
        let spec = even_fixture(n);
        for r in 1..=2 * n {
            let numeric = contour_residue(
                |s| Ok(even_nontrivial_superzeta(&spec, &model, s, z, ctx)?.value),
                cx(r as f64, 0.0),
                0.25,
                32,
            )?;
            let exact = even_residue(&spec, r, z)?;
            checks.push(Check::new(
                format!("residue n={n} r={r}"),
                (numeric - exact).norm(),
                1e-6,
            ));
        }
        let lhs = (-even_nontrivial_ds0(&spec, &model, z, ctx)?.value).exp();
        let rhs = even_regularized_product(&spec, f_value(&model, z, ctx)?, z, ctx)?;
        checks.push(Check::new(format!("product n={n}"), rel(lhs, rhs), 1e-4));
    }
    Ok(checks)
}

fn kleinian() -> Result<Vec<Check>> {
    let unit = |case| KleinianParams {
        index_case: case,
        c0_abs: 1.0,
        m_c0: 1,
        lattice_coarea: 1.0,
    };
    let s = cx(0.5, 1.0);
    let one = kleinian_constants(&unit(1), s)?;
    let two = kleinian_constants(&unit(2), s)?;
    let mut checks = vec![
        Check::exact(
            "case 1 plus-prefactor is sqrt(2 pi)",
            one.det_prefactor_plus == cx((2.0 * PI).sqrt(), 0.0),
        ),
        Check::exact(
            "case 2 phi-prefactor at unit parameters is pi/2",
            two.phi_quotient_prefactor == cx(PI / 2.0, 0.0),
        ),
    ];
    for case in 1..=2 {
        let p = KleinianParams {
            index_case: case,
            c0_abs: 0.7,
            m_c0: 3,
            lattice_coarea: 2.3,
        };
        let k = kleinian_constants(&p, s)?;
        let product = k.det_prefactor_minus / k.det_prefactor_plus * k.phi_quotient_prefactor;
        checks.push(Check::new(
            format!("case {case} quotient consistency"),
            (product - 1.0).norm(),
            1e-13,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        assert!(run_suite("nope", &EvalContext::default()).is_none());
        for name in ["hurwitz", "multizeta", "binomial", "kleinian"] {
            let checks = run_suite(name, &EvalContext::default()).unwrap().unwrap();
            assert!(checks.iter().all(|c| c.passed), "{name}: {checks:?}");
        }
    }
}
