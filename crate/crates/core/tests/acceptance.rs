//! Acceptance criteria. Each prints one PASS or FAIL line; the test fails if
//! any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use gkloc::cohind::build_standard_complex;
use gkloc::exactla::{q, Q};
use gkloc::harness::{self, input_module, run_case, Report, VerificationCase};
use gkloc::hecke::{HeckeAlgebra, SpanBasis};
use gkloc::liealg::{LieElt, PairData};
use gkloc::locp1::{self, cech_cohomology_on, twisted_rep_in, Chart, JetModule};
use gkloc::{Character, Family, FactorKind, Weight, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn wide() -> Window {
    Window::new(vec![(-30, 30)]).unwrap()
}

fn ktypes() -> Window {
    Window::new(vec![(0, 12)]).unwrap()
}

fn matched(r: &Report) -> Result<(), String> {
    if r.is_match() {
        Ok(())
    } else {
        Err(format!("{}: {:?}", r.case, r.first_difference))
    }
}

fn criterion_1() -> Outcome {
    let mut slowest = 0.0f64;
    for l in -8..=-2 {
        let t = Instant::now();
        let c = VerificationCase::new(Family::closed_orbit(), vec![l], vec![], wide()).map_err(err)?;
        let r = run_case(&c).map_err(err)?;
        matched(&r)?;
        if !r.side(true, 1).is_empty() || r.vanishing != vec![1] {
            return Err(format!("λ₀={l}: P_1 ≠ 0"));
        }
        if r.side_b.iter().any(|e| e.degree > 0) {
            return Err(format!("λ₀={l}: H^s ≠ 0 for s > 0"));
        }
        // the progression λ₀+2, λ₀+4, … with multiplicity one
        let got: Vec<(i64, i64)> = r.side(true, 0).iter().map(|e| (e.weight[0], e.mult)).collect();
        let want: Vec<(i64, i64)> = (l + 2..=30).step_by(2).map(|w| (w, 1)).collect();
        if got != want {
            return Err(format!("λ₀={l}: {got:?}"));
        }
        slowest = slowest.max(t.elapsed().as_secs_f64());
    }
    Ok(format!("λ₀ = -8..-2 on [-30, 30], slowest case {slowest:.2}s"))
}

fn criterion_2() -> Outcome {
    for l in 0..=2 {
        for p in 0..=1u8 {
            let c = VerificationCase::new(Family::open_orbit(), vec![l], vec![p], wide()).map_err(err)?;
            let r = run_case(&c).map_err(err)?;
            matched(&r)?;
            let n = r.side(true, 0).len();
            let want = if p == 0 { 31 } else { 30 };
            if n != want || r.side(true, 0).iter().any(|e| e.mult != 1) {
                return Err(format!("λ₀={l} p={p}: {n} weights"));
            }
        }
    }
    Ok("λ₀ = 0..2, both parities, on [-30, 30]".into())
}

fn dim_ktypes(c: &Character) -> i64 {
    c.iter().map(|(w, m)| (w.0[0] + 1) * m).sum()
}

fn criterion_3() -> Outcome {
    for n in 0..=5 {
        let c = VerificationCase::new(Family::BorelWeilBott, vec![n], vec![], ktypes()).map_err(err)?;
        let r = run_case(&c).map_err(err)?;
        matched(&r)?;
        let (h0, h1) = cech_cohomology_on(n).map_err(err)?;
        if dim_ktypes(&h0) != n + 1 || !h1.is_zero() {
            return Err(format!("dim H^0(O({n})) = {}", dim_ktypes(&h0)));
        }
        let c = VerificationCase::new(Family::BorelWeilBott, vec![-n - 2], vec![], ktypes()).map_err(err)?;
        let r = run_case(&c).map_err(err)?;
        matched(&r)?;
        let (h0, h1) = cech_cohomology_on(-n - 2).map_err(err)?;
        if dim_ktypes(&h1) != n + 1 || !h0.is_zero() {
            return Err(format!("dim H^1(O({})) = {}", -n - 2, dim_ktypes(&h1)));
        }
    }
    let empty = Character::ktypes();
    let wall = VerificationCase::new(Family::BorelWeilBott, vec![-1], vec![], ktypes())
        .map_err(err)?
        .with_fixture(vec![empty.clone(), empty]);
    let r = run_case(&wall).map_err(err)?;
    matched(&r)?;
    if !r.side_a.is_empty() || !r.side_b.is_empty() {
        return Err("wall case does not vanish".into());
    }
    Ok("n = 0..5 and their Serre duals; wall n = -1 vanishes on both sides".into())
}

fn criterion_4() -> Outcome {
    let detail = harness::oracle_equivalence().map_err(err)?;
    let pair = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::OpenOne])).map_err(err)?;
    let win = Window::cube(2, -4, 4).map_err(err)?;
    for (l, p) in [([-2, 0], 0u8), ([-3, 1], 1)] {
        let v = input_module(&pair, &l, &[0, p]).map_err(err)?;
        let w = gkloc::cohind::twisted_input(&pair, &v).map_err(err)?;
        let a = gkloc::cohind::derived_p(&pair, &v, 0, &win).map_err(err)?;
        let b = gkloc::hecke::p_deg0_oracle(&pair, &w, &win).map_err(err)?;
        if a != b {
            return Err(format!("product λ={l:?}: {:?}", a.first_difference(&b)));
        }
    }
    Ok(format!("{detail} plus 2 product cases"))
}

fn criterion_5() -> Outcome {
    let mut blocks = 0;
    let mut cases: Vec<(Family, Vec<i64>, Vec<u8>, Window)> = Vec::new();
    for l in -8..=-2 {
        cases.push((Family::closed_orbit(), vec![l], vec![], Window::new(vec![(-10, 10)]).unwrap()));
    }
    for l in 0..=2 {
        for p in 0..=1 {
            cases.push((Family::open_orbit(), vec![l], vec![p], Window::new(vec![(-10, 10)]).unwrap()));
        }
    }
    for n in -3..=5 {
        cases.push((Family::BorelWeilBott, vec![n], vec![], ktypes()));
    }
    for l in [[-2, -3], [0, 1], [-1, -1]] {
        cases.push((
            Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero]),
            l.to_vec(),
            vec![],
            Window::cube(2, -5, 5).unwrap(),
        ));
    }
    for (f, l, p, win) in cases {
        let pair = PairData::new(f.clone()).map_err(err)?;
        let v = input_module(&pair, &l, &p).map_err(err)?;
        let cx = build_standard_complex(&pair, &v, &win).map_err(err)?;
        if let Some((d, w)) = cx.first_nonzero_square() {
            return Err(format!("family {} λ={l:?}: degree {d}, weight {:?}", f.code(), w.0));
        }
        if f.code() == "D" && cx.top() != 2 {
            return Err("family D should have three terms".into());
        }
        blocks += cx.weights().len();
    }
    if harness::corrupted_sign_block().map_err(err)?.is_none() {
        return Err("corrupted sign not detected".into());
    }
    Ok(format!("{blocks} weight blocks exact; corrupted sign detected"))
}

fn criterion_6() -> Outcome {
    let assoc = harness::hecke_associativity(120, 2024).map_err(err)?;
    let unit = harness::hecke_unit(40, 99).map_err(err)?;
    let pair = PairData::new(Family::closed_orbit()).map_err(err)?;
    let r = HeckeAlgebra::new(&pair).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = 60;
    for i in 0..cases {
        let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-3i64..4)).collect();
        if coeffs.iter().all(|c| *c == 0) {
            continue;
        }
        let xi = (0..3).fold(gkloc::pbw::UElt::zero(), |acc, k| {
            acc.add(&r.local_word(&[pair.g.basis(k)]).unwrap().scale(&q(coeffs[k])))
        });
        let word: Vec<LieElt> = (0..rng.gen_range(0..3)).map(|_| pair.g.basis(rng.gen_range(0..3))).collect();
        let eta = r.local_word(&word).map_err(err)?;
        let k = coeffs.iter().filter(|c| **c != 0).count();
        let mix: Vec<Vec<Q>> = (0..k)
            .map(|a| (0..k).map(|b| if a == b { q(1) } else if b > a { q(rng.gen_range(-2i64..3)) } else { q(0) }).collect())
            .collect();
        let (n, n2) = (Weight(vec![rng.gen_range(-2..3)]), Weight(vec![rng.gen_range(-2..5)]));
        let plain = r.mul_general(&n, &xi, &n2, &eta, &SpanBasis::WeightComponents).map_err(err)?;
        let mixed = r.mul_general(&n, &xi, &n2, &eta, &SpanBasis::Mixed(mix)).map_err(err)?;
        if plain != mixed {
            return Err(format!("basis dependence in case {i}"));
        }
    }
    Ok(format!("associativity on {assoc}; unit on {unit}; {cases} basis changes"))
}

fn criterion_7() -> Outcome {
    for l in -10..=10 {
        for chart in [Chart::Z, Chart::W] {
            twisted_rep_in(chart, l).check_brackets().map_err(|e| format!("λ₀={l}: {e}"))?;
        }
    }
    Ok("all basis pairs, λ₀ = -10..10, both charts".into())
}

fn criterion_8() -> Outcome {
    for p in 1..=4 {
        for l in -4..=3 {
            let r = JetModule::closed(l, p).map_err(err)?.check();
            if !r.all() {
                return Err(format!("closed p={p} λ₀={l}: {r:?}"));
            }
            for par in 0..=1 {
                let r = JetModule::open(l, par, 4, p).map_err(err)?.check();
                if !r.all() {
                    return Err(format!("open p={p} λ₀={l} parity {par}: {r:?}"));
                }
            }
        }
    }
    Ok("all five conditions, p = 1..4, closed and open orbits".into())
}

fn criterion_9() -> Outcome {
    harness::duality_check().map_err(err)
}

fn negated(r: &Report) -> Vec<(usize, Vec<i64>, i64)> {
    r.side_a
        .iter()
        .chain(&r.side_b)
        .map(|e| (e.degree, e.weight.iter().map(|x| -x).collect(), e.mult))
        .collect()
}

fn plain(r: &Report) -> Vec<(usize, Vec<i64>, i64)> {
    r.side_a
        .iter()
        .chain(&r.side_b)
        .map(|e| (e.degree, e.weight.clone(), e.mult))
        .collect()
}

fn criterion_10() -> Outcome {
    let cases = harness::default_cases().map_err(err)?;
    for c in &cases {
        let a = run_case(c).map_err(err)?;
        let mut bigger = c.clone();
        bigger.window = c.window.with_extra_margin(1);
        let b = run_case(&bigger).map_err(err)?;
        if (a.side_a.clone(), a.side_b.clone()) != (b.side_a.clone(), b.side_b.clone()) {
            return Err(format!("{}: margin +1 changes the characters", c.id));
        }
        if !a.is_match() {
            return Err(format!("{} does not match", c.id));
        }
    }
    // the orbit at infinity, in the w chart, mirrors the orbit at zero
    for l in -8..=-2 {
        let zero = VerificationCase::new(Family::closed_orbit(), vec![l], vec![], wide()).map_err(err)?;
        let inf = VerificationCase::new(Family::Torus(vec![FactorKind::ClosedInfinity]), vec![l], vec![], wide())
            .map_err(err)?;
        let (rz, ri) = (run_case(&zero).map_err(err)?, run_case(&inf).map_err(err)?);
        matched(&ri)?;
        let (mut a, mut b) = (negated(&rz), plain(&ri));
        a.sort();
        b.sort();
        if a != b {
            return Err(format!("λ₀={l}: chart swap is not the mirror"));
        }
        let win = wide();
        let dz = locp1::delta_module_in(Chart::Z, l, &win).map_err(err)?.character();
        let dw = locp1::delta_module_in(Chart::W, l, &win).map_err(err)?.character();
        if dz.negate_weights().restrict(&win) != dw.restrict(&win) {
            return Err(format!("λ₀={l}: delta modules are not mirrored"));
        }
    }
    Ok(format!("{} default cases stable under margin +1; chart swap mirrors family A", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed orbit", criterion_1),
        ("open orbit", criterion_2),
        ("Borel-Weil-Bott", criterion_3),
        ("oracle equivalence", criterion_4),
        ("boundary squares to zero", criterion_5),
        ("Hecke algebra", criterion_6),
        ("twisted operators", criterion_7),
        ("associated modules", criterion_8),
        ("duality", criterion_9),
        ("stability", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({:.1}s)", i + 1, t.elapsed().as_secs_f64()),
            Err(e) => {
                println!("criterion {:>2} FAIL {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
