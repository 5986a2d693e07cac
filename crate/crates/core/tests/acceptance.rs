//! Exit criteria, each reported as one PASS/FAIL line. All comparisons are
//! exact rational equalities.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use lbforge::cobracket::axiom_sweep;
use lbforge::lagrangian::{catalog_w, dual_basis, is_lagrangian, t_to_u, WPresentation};
use lbforge::lie::{build_sl, casimir, cyb, jordanian, r_c1c2, r_dj, ConstTensor2, GElement, LieAlgebraData};
use lbforge::pairing::{
    admissible_degree, embed_canonical, q_form, validate_case, AForm, Admissible, CaseSpec, DoubleElement,
    DoubleType, LoopElement, Vertex,
};
use lbforge::poly::{Poly1, Poly2};
use lbforge::rat::{frac, int, Rat};
use lbforge::ratfun::BivarRat;
use lbforge::rmatrix::{
    build_r, catalog_constant, cyb_spectral, expand_region, required_kind, sum_dual_series, RKind, RKindTag,
    SpectralTensor2,
};
use lbforge::twist::{quasi_twist_verify, remark_example_check, remark_example_check_scaled, solve_pq};
use lbforge::wire::ElementDoc;

const SEED: u64 = 0x005e_ed1b;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rat(rng: &mut StdRng) -> Rat {
    loop {
        let n: i64 = rng.random_range(-12..=12);
        let d: i64 = rng.random_range(1..=7);
        if n != 0 {
            return frac(n, d);
        }
    }
}

fn distinct_pair(rng: &mut StdRng) -> (Rat, Rat) {
    loop {
        let (a, b) = (random_rat(rng), random_rat(rng));
        if a != b {
            return (a, b);
        }
    }
}

fn over_difference(num: Poly2) -> BivarRat {
    BivarRat::new(num, &Rat::one(), 1).unwrap()
}

/// Evaluates `Σ f_ij(u, v) b_i ⊗ b_j` at a point as a constant tensor.
fn evaluate(r: &SpectralTensor2, u: &Rat, v: &Rat) -> ConstTensor2 {
    let mut t = ConstTensor2::zero();
    for ((i, j), f) in r.entries() {
        t.add_term(i, j, f.eval(u, v).unwrap());
    }
    t
}

fn criterion_1() -> Outcome {
    let g = build_sl(2).unwrap();
    let omega = casimir(&g);
    let dj = RKind::mcybe(&g, r_dj(&g)).unwrap();
    let mut rng = StdRng::seed_from_u64(SEED);
    for _ in 0..10 {
        let (c1, c2) = distinct_pair(&mut rng);
        let mut num = Poly2::one();
        num.add_term([1, 0], -(&c1 + &c2));
        num.add_term([1, 1], &c1 * &c2);
        let lhs = SpectralTensor2::from_scalar(&over_difference(num), &omega)
            .sub(&SpectralTensor2::constant(&r_c1c2(&g, &c1, &c2).unwrap()));
        let spec = CaseSpec::new(DoubleType::I, AForm::TwoPoints(c1.clone(), c2.clone()));
        let rhs = build_r(&g, &spec, &dj).unwrap();
        ensure(lhs == rhs, || format!("symbolic mismatch at c = ({c1}, {c2})"))?;
        // pointwise, off the diagonal
        for (u, v) in [(int(0), int(1)), (frac(1, 3), int(-2)), (int(5), frac(7, 2))] {
            let manual = omega
                .scale(&((Rat::one() - &c1 * &v - &c2 * &u + &c1 * &c2 * &u * &v) / (&v - &u)))
                .add(&r_dj(&g).scale(&(&c1 - &c2)));
            ensure(evaluate(&lhs, &u, &v) == manual, || format!("pointwise mismatch at c = ({c1}, {c2})"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let g = build_sl(2).unwrap();
    let n = 6;
    for spec in CaseSpec::families() {
        let w = catalog_w(&g, &spec).map_err(|e| e.to_string())?;
        let duals = dual_basis(&g, &w, n).map_err(|e| format!("{spec}: {e}"))?;
        for d in &duals {
            for k in 0..=n {
                for b in 0..g.dim() {
                    let q = q_form(&g, &spec, &embed_canonical(spec.double_type, b, k), &d.element).unwrap();
                    let expect = if (b, k) == (d.basis, d.degree) { Rat::one() } else { Rat::zero() };
                    ensure(q == expect, || {
                        format!(
                            "{spec}: Q({} u^{k}, w[{} u^{}]) = {q}",
                            g.label(b),
                            g.label(d.basis),
                            d.degree
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn series_matches(g: &LieAlgebraData, spec: &CaseSpec, n: u32) -> Outcome {
    let w = catalog_w(g, spec).map_err(|e| e.to_string())?;
    let series = sum_dual_series(g, &w, n).map_err(|e| e.to_string())?;
    let r = build_r(g, spec, &catalog_constant(g, spec).unwrap()).unwrap();
    ensure(series == expand_region(&r, n), || format!("{spec} on sl_{}", g.matrix_size()))
}

fn criterion_3() -> Outcome {
    let g = build_sl(2).unwrap();
    for spec in CaseSpec::families() {
        series_matches(&g, &spec, 6)?;
    }
    series_matches(&build_sl(3).unwrap(), &"I:constant".parse().unwrap(), 6)
}

/// Every family paired with each constant part the sweep uses.
fn family_instances(g: &LieAlgebraData) -> Vec<(String, SpectralTensor2)> {
    let mut out = Vec::new();
    for spec in CaseSpec::families() {
        let kinds = match required_kind(&spec).unwrap() {
            RKindTag::Mcybe => vec![("r_DJ".to_string(), RKind::mcybe(g, r_dj(g)).unwrap())],
            RKindTag::SkewCybe => {
                let mut v = vec![("0".to_string(), RKind::skew(g, ConstTensor2::zero()).unwrap())];
                for a in 0..g.positive_roots().len() {
                    v.push((
                        format!("h∧e[{}]", g.label(g.e(a))),
                        RKind::skew(g, jordanian(g, a)).unwrap(),
                    ));
                }
                v
            }
        };
        for (name, r) in kinds {
            out.push((format!("{spec} + {name}"), build_r(g, &spec, &r).unwrap()));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    for n in [2, 3] {
        let g = build_sl(n).unwrap();
        for (name, r) in family_instances(&g) {
            ensure(cyb_spectral(&g, &r).is_zero(), || format!("{name} on sl_{n}"))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for n in [2, 3, 4] {
        let g = build_sl(n).unwrap();
        let dj = r_dj(&g);
        ensure(cyb(&g, &dj).is_zero(), || format!("CYB(r_DJ) on sl_{n}"))?;
        ensure(dj.add(&dj.swap()) == casimir(&g), || format!("r_DJ + r_DJ^21 on sl_{n}"))?;
        for a in 0..g.positive_roots().len() {
            ensure(cyb(&g, &jordanian(&g, a)).is_zero(), || format!("CYB(h∧e) on sl_{n}"))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (n, degree) in [(2, 4), (3, 2)] {
        let g = build_sl(n).unwrap();
        let records = axiom_sweep(&g, &family_instances(&g), degree);
        if let Some(bad) = records.iter().find(|r| !r.pass) {
            return Err(format!("{} {:?} {} on sl_{n}", bad.family, bad.check, bad.element));
        }
        ensure(!records.is_empty(), || "empty sweep".into())?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 7);
    let mut done = 0;
    while done < 20 {
        let (c1, c2) = distinct_pair(&mut rng);
        let (d1, d2) = distinct_pair(&mut rng);
        let Ok(ch) = solve_pq(&c1, &c2, &d1, &d2) else {
            continue;
        };
        for (c, d) in [(&c1, &d1), (&c2, &d2)] {
            let forward = c * ch.p() / (Rat::one() - c * ch.q());
            ensure(&forward == d, || format!("back-substitution fails for {c} -> {d}"))?;
        }
        let report = quasi_twist_verify(&c1, &c2, &d1, &d2).map_err(|e| e.to_string())?;
        let closed = ch.p() / ((Rat::one() - &c1 * ch.q()) * (Rat::one() - &c2 * ch.q()));
        ensure(report.equal && report.scaling == closed, || {
            format!("({c1}, {c2}) -> ({d1}, {d2}) not equivalent")
        })?;
        done += 1;
    }
    let report = quasi_twist_verify(&int(1), &int(2), &int(3), &int(5)).map_err(|e| e.to_string())?;
    let (p, q) = (report.change.p().clone(), report.change.q().clone());
    ensure(
        (p.clone(), q.clone(), report.scaling.clone()) == (frac(15, 4), frac(-1, 4), int(2)) && report.equal,
        || format!("(1,2,3,5) gave p={p} q={q} C={}", report.scaling),
    )?;
    // 1·(15/4)/(1 + 1/4) = 3 and 2·(15/4)/(1 + 1/2) = 5
    ensure(
        frac(15, 4) / (int(1) + frac(1, 4)) == int(3) && int(2) * frac(15, 4) / (int(1) + frac(2, 4)) == int(5),
        || "independent back-substitution".into(),
    )
}

fn criterion_8() -> Outcome {
    let g = build_sl(2).unwrap();
    ensure(remark_example_check(&g).unwrap(), || "substitution does not match".into())?;
    ensure(!remark_example_check_scaled(&g, &int(3)).unwrap(), || "wrong scale accepted".into())
}

fn criterion_9() -> Outcome {
    use Admissible::*;
    let expected = [
        (DoubleType::I, [MaxDegree(2), MaxDegree(2), MaxDegree(1)]),
        (DoubleType::II, [MaxDegree(1), MaxDegree(1), MaxDegree(0)]),
        (DoubleType::III, [MaxDegree(0), MaxDegree(0), Impossible]),
    ];
    for (dt, cells) in expected {
        let vertices = [Vertex::MinusAlphaMax, Vertex::Simple(1), Vertex::Simple(2)];
        for (v, cell) in vertices.into_iter().zip(cells) {
            let got = admissible_degree(dt, v).unwrap();
            ensure(got == cell, || format!("{dt} {v:?}: {got}"))?;
        }
        ensure(admissible_degree(dt, Vertex::Simple(5)).unwrap() == cells[2], || format!("{dt} k=5"))?;
    }
    let forms = [
        AForm::TwoPoints(int(1), int(2)),
        AForm::DoublePole,
        AForm::SimplePole,
        AForm::Constant,
    ];
    for dt in [DoubleType::I, DoubleType::II, DoubleType::III] {
        for form in &forms {
            let spec = CaseSpec::new(dt, form.clone());
            let legal = form.inverse_degree() <= [2, 1, 0][dt as usize];
            match (validate_case(&spec), legal) {
                (Ok(()), true) => {}
                (Err(rej), false) => {
                    let cite = match dt {
                        DoubleType::II => "degree at most 1",
                        DoubleType::III => "is a constant",
                        DoubleType::I => "degree at most 2",
                    };
                    ensure(rej.reason.contains(cite), || format!("{spec}: {}", rej.reason))?;
                }
                (got, _) => return Err(format!("{spec}: unexpected {got:?}")),
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let g = build_sl(2).unwrap();
    for spec in CaseSpec::families() {
        let w = catalog_w(&g, &spec).unwrap();
        let report = is_lagrangian(&g, &w, 6).map_err(|e| e.to_string())?;
        ensure(report.all(), || format!("{spec}: {report:?}"))?;
    }
    let (c1, c2) = (int(1), int(2));
    let spec = CaseSpec::new(DoubleType::I, AForm::TwoPoints(c1.clone(), c2.clone()));
    let mut w: WPresentation = catalog_w(&g, &spec).unwrap();
    // lift of (0, e_α) is (u^{-1} − c1) e_α / (c2 − c1); flip the sign of c1
    let t_plus_c1 = Poly1::from_coeffs(&[c1.clone(), int(1)]).scale(&(&c2 - &c1).recip());
    let corrupted = DoubleElement::from_loop(LoopElement::from_product(&GElement::basis(g.e(0)), &t_to_u(&t_plus_c1)));
    let t_minus_c1 = Poly1::from_coeffs(&[-c1.clone(), int(1)]).scale(&(&c2 - &c1).recip());
    let original = DoubleElement::from_loop(LoopElement::from_product(&GElement::basis(g.e(0)), &t_to_u(&t_minus_c1)));
    let slot = w.head.iter().position(|h| h == &original).ok_or("catalog lift of (0, e) not found")?;
    w.head[slot] = corrupted;
    let report = is_lagrangian(&g, &w, 6).map_err(|e| e.to_string())?;
    let witness = report.witness.as_ref().ok_or("corrupted generator passed isotropy")?;
    println!(
        "    isotropy witness: Q({}, {}) = {}",
        serde_json::to_string(&ElementDoc::of(&g, &witness.first)).unwrap(),
        serde_json::to_string(&ElementDoc::of(&g, &witness.second)).unwrap(),
        witness.value
    );
    ensure(!report.isotropic, || "isotropy flag not cleared".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("two-point rewriting identity, 10 random (c1, c2)", criterion_1),
        ("dual-basis pairing is the identity, k, l <= 6", criterion_2),
        ("dual-basis series equals closed-form expansion, N = 6", criterion_3),
        ("spectral CYB vanishes, sl_2 and sl_3", criterion_4),
        ("constant contracts for r_DJ and h∧e, sl_2..sl_4", criterion_5),
        ("cobracket axiom sweep, deg <= 4 on sl_2, <= 2 on sl_3", criterion_6),
        ("affine equivalence of two-point families", criterion_7),
        ("u = 2u1 - 1 substitution example", criterion_8),
        ("admissible degree table and case rejection", criterion_9),
        ("catalog W is Lagrangian at window 6; corruption detected", criterion_10),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = f();
                    (out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0)))
            .collect()
    });
    let mut failed = 0;
    for (n, ((name, _), (outcome, secs))) in criteria.iter().zip(&results).enumerate() {
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.2}s)", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
