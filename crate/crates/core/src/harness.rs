//! Verification cases, reports, and the self-test suite.
//!
//! A case fixes a pair, a parameter `λ` and a window. [`run_case`] computes
//! the geometric `H^s` and the algebraic `P_{u-s}` and compares them weight by
//! weight.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohind::{build_standard_complex, derived_i, derived_p};
use crate::error::{Error, Result};
use crate::exactla::{q, SparseMatrix};
use crate::gkmod::{one_dim_module, Character, CharacterEntry, HModule, Weight, Window, DEFAULT_MARGIN};
use crate::hecke::{induced_bracket_check, p_deg0_oracle, HeckeAlgebra, RgKElt};
use crate::liealg::{sl2, Family, FactorKind, KKind, LieAlg, LieElt, PairData};
use crate::locp1::{self, Chart, JetModule, Ledger};

/// What a case is expected to produce beyond the two sides agreeing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Match,
    /// The geometric `H^s`, recorded independently.
    RecordedFixture(Vec<Character>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationCase {
    pub id: String,
    pub family: Family,
    pub lambda: Vec<i64>,
    pub parity: Vec<u8>,
    pub window: Window,
    pub expected: Expected,
}

impl VerificationCase {
    pub fn new(family: Family, lambda: Vec<i64>, parity: Vec<u8>, window: Window) -> Result<Self> {
        if window.margin < DEFAULT_MARGIN {
            return Err(Error::WindowTooSmall(format!(
                "verification needs margin at least {DEFAULT_MARGIN}"
            )));
        }
        let nf = match &family {
            Family::Torus(fs) => fs.len(),
            Family::BorelWeilBott => 1,
        };
        if lambda.len() != nf || window.rank() != nf {
            return Err(Error::DimensionMismatch(format!(
                "family {} needs {nf} parameters and a rank-{nf} window",
                family.code()
            )));
        }
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let mut id = format!("{}[{}]", family.code(), join(&lambda));
        if !parity.is_empty() {
            let p: Vec<i64> = parity.iter().map(|x| i64::from(*x)).collect();
            id.push_str(&format!("p[{}]", join(&p)));
        }
        Ok(VerificationCase {
            id,
            family,
            lambda,
            parity,
            window,
            expected: Expected::Match,
        })
    }

    pub fn with_fixture(mut self, geometric: Vec<Character>) -> Self {
        self.expected = Expected::RecordedFixture(geometric);
        self
    }
}

/// One weight (or `K`-type) of one side in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub degree: usize,
    pub weight: Vec<i64>,
    pub mult: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<u8>>,
}

impl DegreeEntry {
    fn new(degree: usize, e: CharacterEntry) -> Self {
        DegreeEntry {
            degree,
            weight: e.weight,
            mult: e.multiplicity,
            parity: e.parity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreePair {
    pub s: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactMatch,
    Mismatch,
}

/// A weight where the comparison failed. `s` or `j` is absent when the
/// other side has no partner degree and was required to vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub s: Option<usize>,
    pub j: Option<usize>,
    pub weight: Vec<i64>,
    pub side_a: i64,
    pub side_b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub kl_twist: i64,
    #[serde(rename = "canonical_Y")]
    pub canonical_y: i64,
    #[serde(rename = "anticanonical_X")]
    pub anticanonical_x: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<Ledger>,
}

impl LedgerReport {
    fn for_family(f: &Family) -> Self {
        let ls = Ledger::for_family(f);
        LedgerReport {
            kl_twist: ls.iter().map(|l| l.kl_twist).sum(),
            canonical_y: ls.iter().map(|l| l.canonical_y).sum(),
            anticanonical_x: ls.iter().map(|l| l.anticanonical_x).sum(),
            factors: if ls.len() > 1 { ls } else { Vec::new() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub case: String,
    pub family: String,
    pub lambda: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parity: Vec<u8>,
    pub window: Window,
    /// Algebraic side, `P_j` for every `j`.
    pub side_a: Vec<DegreeEntry>,
    /// Geometric side, `H^s` for every `s`.
    pub side_b: Vec<DegreeEntry>,
    pub pairs_compared: Vec<DegreePair>,
    /// Algebraic degrees with no geometric partner, required to vanish.
    pub vanishing: Vec<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<Difference>,
    pub ledger: LedgerReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::ExactMatch
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Characters of one side by degree.
    pub fn side(&self, algebraic: bool, degree: usize) -> Vec<&DegreeEntry> {
        let v = if algebraic { &self.side_a } else { &self.side_b };
        v.iter().filter(|e| e.degree == degree).collect()
    }
}

fn lambda_json(lambda: &[i64]) -> serde_json::Value {
    match lambda {
        [x] => serde_json::json!(x),
        _ => serde_json::json!(lambda),
    }
}

fn entries(cs: &[Character]) -> Vec<DegreeEntry> {
    cs.iter()
        .enumerate()
        .flat_map(|(d, c)| c.entries().into_iter().map(move |e| DegreeEntry::new(d, e)))
        .collect()
}

/// The one-dimensional `(h, L)`-module `V` with parameter `λ`.
pub fn input_module(pair: &PairData, lambda: &[i64], parity: &[u8]) -> Result<HModule> {
    let vals = locp1::isotropy_values(pair, lambda)?;
    let wt = locp1::isotropy_weight(pair, lambda, parity)?;
    one_dim_module(pair, &vals, &wt)
}

/// `P_j(V ⊗ ⋀^top(g/h))` for `j = 0..=dim(h/l)`.
pub fn algebraic_side(pair: &PairData, case: &VerificationCase) -> Result<Vec<Character>> {
    let v = input_module(pair, &case.lambda, &case.parity)?;
    let cx = build_standard_complex(pair, &v, &case.window)?;
    cx.check_d_squared()?;
    (0..=cx.top()).map(|j| cx.homology(j)).collect()
}

/// `H^s` of the localized module, `s = 0..=dim U`.
pub fn geometric_side(pair: &PairData, case: &VerificationCase) -> Result<Vec<Character>> {
    locp1::geometric_side(pair, &case.lambda, &case.parity, &case.window)
}

fn compare(a: &Character, b: &Character, s: Option<usize>, j: Option<usize>) -> Option<Difference> {
    a.first_difference(b).map(|w| Difference {
        s,
        j,
        side_a: a.get(&w),
        side_b: b.get(&w),
        weight: w.0,
    })
}

pub fn run_case(case: &VerificationCase) -> Result<Report> {
    let pair = PairData::new(case.family.clone())?;
    let alg = algebraic_side(&pair, case)?;
    let geo = geometric_side(&pair, case)?;
    let kind = alg[0].kind;
    let zero = Character::empty(kind);
    let u = pair.u_dim;
    let mut pairs = Vec::new();
    let mut diff = None;
    for s in 0..=u {
        let j = u - s;
        pairs.push(DegreePair { s, j });
        let (a, b) = (alg.get(j).unwrap_or(&zero), geo.get(s).unwrap_or(&zero));
        diff = diff.or_else(|| compare(a, b, Some(s), Some(j)));
    }
    let vanishing: Vec<usize> = (u + 1..alg.len()).collect();
    for j in &vanishing {
        diff = diff.or_else(|| compare(&alg[*j], &zero, None, Some(*j)));
    }
    for (s, c) in geo.iter().enumerate().skip(u + 1) {
        diff = diff.or_else(|| compare(&zero, c, Some(s), None));
    }
    if let Expected::RecordedFixture(fix) = &case.expected {
        for s in 0..geo.len().max(fix.len()) {
            let (g, f) = (geo.get(s).unwrap_or(&zero), fix.get(s).unwrap_or(&zero));
            diff = diff.or_else(|| compare(f, g, Some(s), None));
        }
    }
    Ok(Report {
        case: case.id.clone(),
        family: case.family.code().to_string(),
        lambda: lambda_json(&case.lambda),
        parity: case.parity.clone(),
        window: case.window.clone(),
        side_a: entries(&alg),
        side_b: entries(&geo),
        pairs_compared: pairs,
        vanishing,
        verdict: if diff.is_none() { Verdict::ExactMatch } else { Verdict::Mismatch },
        first_difference: diff,
        ledger: LedgerReport::for_family(&case.family),
        notes: pair
            .parity_coords()
            .iter()
            .map(|r| format!("L meets coordinate {r} in {{±1}}: balancing over L is the parity constraint"))
            .collect(),
    })
}

/// Runs cases and orders the reports by case id.
pub fn run_cases(cases: &[VerificationCase]) -> Result<Vec<Report>> {
    let mut out = cases.iter().map(run_case).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(out)
}

/// Parses `A`, `B`, `C` or `D`. `D` takes its factors from `factors`
/// (each `A`, `B` or `Ainf`), defaulting to two closed orbits.
pub fn parse_family(code: &str, factors: Option<&str>) -> Result<Family> {
    let factor = |s: &str| match s.trim() {
        "A" | "0" => Ok(FactorKind::ClosedZero),
        "Ainf" | "inf" => Ok(FactorKind::ClosedInfinity),
        "B" | "1" => Ok(FactorKind::OpenOne),
        other => Err(Error::Invalid(format!("unknown factor {other:?}"))),
    };
    match code.trim() {
        "A" => Ok(Family::closed_orbit()),
        "Ainf" => Ok(Family::Torus(vec![FactorKind::ClosedInfinity])),
        "B" => Ok(Family::open_orbit()),
        "C" => Ok(Family::BorelWeilBott),
        "D" => {
            let fs = match factors {
                None => vec![FactorKind::ClosedZero, FactorKind::ClosedZero],
                Some(s) => s.split(',').map(factor).collect::<Result<Vec<_>>>()?,
            };
            if fs.len() < 2 {
                return Err(Error::Invalid("family D needs at least two factors".into()));
            }
            Ok(Family::product(fs))
        }
        other => Err(Error::Invalid(format!("unknown family {other:?}"))),
    }
}

/// Default cases: `A` with `λ₀ = -2..-8`, `B` with `λ₀ = 0..2` in both
/// parities, `C` with `n = 0..5` and the wall `n = -1` as a fixture where
/// both cohomologies vanish, and one product case.
pub fn default_cases() -> Result<Vec<VerificationCase>> {
    let wide = || Window::new(vec![(-30, 30)]);
    let mut out = Vec::new();
    for l in (-8..=-2).rev() {
        out.push(VerificationCase::new(Family::closed_orbit(), vec![l], vec![], wide()?)?);
    }
    for l in 0..=2 {
        for p in 0..=1 {
            out.push(VerificationCase::new(Family::open_orbit(), vec![l], vec![p], wide()?)?);
        }
    }
    for n in 0..=5 {
        out.push(VerificationCase::new(Family::BorelWeilBott, vec![n], vec![], Window::new(vec![(0, 10)])?)?);
    }
    let empty = Character::ktypes();
    out.push(
        VerificationCase::new(Family::BorelWeilBott, vec![-1], vec![], Window::new(vec![(0, 10)])?)?
            .with_fixture(vec![empty.clone(), empty]),
    );
    out.push(VerificationCase::new(
        Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero]),
        vec![-2, -3],
        vec![],
        Window::cube(2, -6, 6)?,
    )?);
    Ok(out)
}

/// Writes one row per (case, side, degree, weight).
pub fn write_csv<W: Write>(reports: &[Report], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(["case", "side", "degree", "weight", "parity", "mult"]).map_err(io)?;
    for r in reports {
        for (side, list) in [("a", &r.side_a), ("b", &r.side_b)] {
            for e in list {
                let join = |v: Vec<String>| v.join(" ");
                w.write_record([
                    r.case.clone(),
                    side.to_string(),
                    e.degree.to_string(),
                    join(e.weight.iter().map(i64::to_string).collect()),
                    join(e.parity.iter().flatten().map(u8::to_string).collect()),
                    e.mult.to_string(),
                ])
                .map_err(io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::Invalid(e.to_string()))
}

/// Summary of the pair, as printed by `describe`.
pub fn describe(family: &Family) -> Result<serde_json::Value> {
    let pair = PairData::new(family.clone())?;
    let k = match pair.k.kind {
        KKind::Torus { rank } => format!("torus of rank {rank}"),
        KKind::Sl2 => "SL(2)".to_string(),
    };
    let fmt = |v: &[LieElt]| -> Vec<Vec<String>> {
        v.iter().map(|x| x.iter().map(ToString::to_string).collect()).collect()
    };
    Ok(serde_json::json!({
        "family": family.code(),
        "name": family.name(),
        "dim_g": pair.g.dim(),
        "g_basis": pair.g.labels(),
        "K": k,
        "h_basis": fmt(pair.h.basis()),
        "dim_l": pair.l_dim,
        "dim_h_mod_l": pair.xi().len(),
        "dim_u": pair.u_dim,
        "parity_coords": pair.parity_coords(),
        "ledger": LedgerReport::for_family(family),
    }))
}

/// One entry of the self-test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, r: Result<String>) -> CheckResult {
    match r {
        Ok(detail) => CheckResult { check: name.into(), passed: true, detail },
        Err(e) => CheckResult { check: name.into(), passed: false, detail: e.to_string() },
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(msg.into()))
    }
}

fn all_pairs() -> Result<Vec<PairData>> {
    [
        Family::closed_orbit(),
        Family::open_orbit(),
        Family::BorelWeilBott,
        Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero]),
    ]
    .into_iter()
    .map(PairData::new)
    .collect()
}

/// `sl2` with `[e, f] = e`, which fails the Jacobi identity.
pub fn corrupted_sl2() -> Result<LieAlg> {
    let g = sl2();
    let mut c = g.structure_constants().to_vec();
    c[0][2] = vec![q(1), q(0), q(0)];
    c[2][0] = vec![q(-1), q(0), q(0)];
    LieAlg::new_unchecked(g.labels().to_vec(), c)
}

/// Flips the sign of one entry of `∂′_2` in the product family and returns
/// the weight block where `∂′²` then fails.
pub fn corrupted_sign_block() -> Result<Option<(usize, Weight)>> {
    let pair = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero]))?;
    let v = input_module(&pair, &[0, 0], &[])?;
    let mut cx = build_standard_complex(&pair, &v, &Window::cube(2, 0, 4)?)?;
    let (w, m) = cx.boundaries[2]
        .iter()
        .find(|(_, m)| m.nnz() > 0)
        .map(|(w, m)| (w.clone(), m.clone()))
        .ok_or_else(|| Error::Invalid("no nonzero block".into()))?;
    let mut trip: Vec<_> = m.entries().map(|(r, c, x)| (r, c, x.clone())).collect();
    trip[0].2 = -trip[0].2.clone();
    cx.boundaries[2].insert(w, SparseMatrix::from_triplets(m.rows(), m.cols(), trip)?);
    Ok(cx.first_nonzero_square())
}

/// Random torus-family Hecke elements `Σ c · e_n ⊗ word`.
fn random_rgk(rng: &mut ChaCha8Rng, r: &HeckeAlgebra, p: &PairData) -> Result<RgKElt> {
    let mut acc = r.pure(Weight(vec![0]), q(0), &[])?;
    for _ in 0..rng.gen_range(1..3) {
        let n = rng.gen_range(-2i64..3);
        let len = rng.gen_range(0..3);
        let word: Vec<LieElt> = (0..len).map(|_| p.g.basis(rng.gen_range(0..3))).collect();
        acc = acc.add(&r.pure(Weight(vec![n]), q(rng.gen_range(-2i64..3)), &word)?)?;
    }
    Ok(acc)
}

/// Associativity of `R(g, K)` on `count` seeded random triples.
pub fn hecke_associativity(count: usize, seed: u64) -> Result<String> {
    let p = PairData::new(Family::closed_orbit())?;
    let r = HeckeAlgebra::new(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let a = random_rgk(&mut rng, &r, &p)?;
        let b = random_rgk(&mut rng, &r, &p)?;
        let c = random_rgk(&mut rng, &r, &p)?;
        let left = r.mul(&r.mul(&a, &b)?, &c)?;
        let right = r.mul(&a, &r.mul(&b, &c)?)?;
        ensure(left == right, format!("triple {i} is not associative"))?;
    }
    Ok(format!("{count} triples"))
}

/// The approximate identity on the support of random elements acts as a
/// two-sided unit.
pub fn hecke_unit(count: usize, seed: u64) -> Result<String> {
    let p = PairData::new(Family::closed_orbit())?;
    let r = HeckeAlgebra::new(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let a = random_rgk(&mut rng, &r, &p)?;
        let support: Vec<Weight> = (-8..=8).map(|n| Weight(vec![n])).collect();
        let one = r.approx_identity(&support)?;
        ensure(r.mul(&one, &a)? == a && r.mul(&a, &one)? == a, format!("element {i}"))?;
    }
    Ok(format!("{count} elements"))
}

fn oracle_grid() -> Vec<(Family, Vec<i64>, Vec<u8>, Window)> {
    let mut out = Vec::new();
    for l in -8..=-2 {
        out.push((Family::closed_orbit(), vec![l], vec![], (-10, 10)));
    }
    for l in 0..=2 {
        for p in 0..=1 {
            out.push((Family::open_orbit(), vec![l], vec![p], (-10, 10)));
        }
    }
    for n in -1..=5 {
        out.push((Family::BorelWeilBott, vec![n], vec![], (0, 8)));
    }
    out.into_iter()
        .map(|(f, l, p, b)| (f, l, p, Window::new(vec![b]).expect("valid bounds")))
        .collect()
}

/// `P_0` from the standard complex against the generators-and-relations oracle.
pub fn oracle_equivalence() -> Result<String> {
    let grid = oracle_grid();
    for (f, l, p, win) in &grid {
        let pair = PairData::new(f.clone())?;
        let v = input_module(&pair, l, p)?;
        let w = crate::cohind::twisted_input(&pair, &v)?;
        let a = derived_p(&pair, &v, 0, win)?;
        let b = p_deg0_oracle(&pair, &w, win)?;
        ensure(a == b, format!("family {} λ={l:?}: {:?}", f.code(), a.first_difference(&b)))?;
    }
    Ok(format!("{} cases", grid.len()))
}

/// `I^j(V^*)` equals `P_j(V)` with negated weights.
pub fn duality_check() -> Result<String> {
    let mut n = 0;
    for (f, l, p) in [
        (Family::closed_orbit(), -3, 0u8),
        (Family::closed_orbit(), 2, 0),
        (Family::open_orbit(), 1, 0),
        (Family::open_orbit(), 0, 1),
    ] {
        let pair = PairData::new(f.clone())?;
        let par: Vec<u8> = if pair.parity_coords().is_empty() { vec![] } else { vec![p] };
        let v = input_module(&pair, &[l], &par)?;
        let win = Window::new(vec![(-8, 8)])?;
        let dual_win = crate::cohind::dual_window(&pair, &win);
        for j in 0..=1 {
            let lhs = derived_i(&pair, &v.dual(), j, &dual_win)?;
            let rhs = derived_p(&pair, &v, j, &win)?.negate_weights();
            ensure(lhs == rhs, format!("family {} λ₀={l} j={j}", f.code()))?;
            n += 1;
        }
    }
    Ok(format!("{n} comparisons"))
}

/// Every implemented structure, plus the two negative controls.
pub fn selftest() -> Vec<CheckResult> {
    let mut out = vec![
        check("lie-algebras", (|| {
            for p in all_pairs()? {
                p.g.verify()?;
                p.verify()?;
            }
            Ok("sl2, products, subpairs".to_string())
        })()),
        check("negative-control-jacobi", (|| match corrupted_sl2()?.verify() {
            Err(Error::Jacobi(i, j, k)) => Ok(format!("Jacobi fails at ({i}, {j}, {k})")),
            other => Err(Error::Invalid(format!("corruption not detected: {other:?}"))),
        })()),
        check("hecke-associativity", hecke_associativity(100, 7)),
        check("hecke-unit", hecke_unit(20, 11)),
    ];
    out.push(check("d-squared", (|| {
        let mut n = 0;
        for p in all_pairs()? {
            let rank = p.rank();
            let lambda = vec![-1; if rank == 1 || p.k.kind == KKind::Sl2 { 1 } else { rank }];
            let parity = vec![1; p.parity_coords().len()];
            let v = input_module(&p, &lambda, &parity)?;
            let win = match p.k.kind {
                KKind::Sl2 => Window::new(vec![(0, 6)])?,
                KKind::Torus { rank } => Window::cube(rank, -4, 4)?,
            };
            let cx = build_standard_complex(&p, &v, &win)?;
            cx.check_d_squared()?;
            n += cx.weights().len();
        }
        Ok(format!("{n} weight blocks"))
    })()));
    out.push(check("negative-control-d-squared", (|| match corrupted_sign_block()? {
        Some((d, w)) => Ok(format!("∂′∘∂′ ≠ 0 at degree {d}, weight {:?}", w.0)),
        None => Err(Error::Invalid("corrupted sign not detected".into())),
    })()));
    out.push(check("twisted-operators", (|| {
        for l in -10..=10 {
            for chart in [Chart::Z, Chart::W] {
                locp1::twisted_rep_in(chart, l).check_brackets()?;
            }
        }
        Ok("λ₀ in -10..=10, both charts".to_string())
    })()));
    out.push(check("graded-modules", (|| {
        let g = sl2();
        let wts = vec![Weight(vec![2]), Weight(vec![0]), Weight(vec![-2])];
        let win = Window::new(vec![(-8, 8)])?;
        for l in -4..=4 {
            let ms = [
                locp1::delta_module_in(Chart::Z, l, &win)?,
                locp1::delta_module_in(Chart::W, l, &win)?,
                locp1::laurent_module(l, 0, &win)?,
                locp1::laurent_module(l, 1, &win)?,
            ];
            for m in ms {
                m.check_brackets(&g, &wts)
                    .map_err(|(i, j, w)| Error::Invalid(format!("[{i}, {j}] at {:?}", w.0)))?;
            }
        }
        Ok("delta and Laurent modules".to_string())
    })()));
    out.push(check("induced-modules", (|| {
        for p in all_pairs()?.into_iter().take(3) {
            let par = vec![0; p.parity_coords().len()];
            let v = input_module(&p, &[1], &par)?;
            let w = crate::cohind::twisted_input(&p, &v)?;
            ensure(induced_bracket_check(&p, &w, 2)?, format!("family {}", p.family.code()))?;
        }
        Ok("U(g) ⊗ W brackets, degree ≤ 2".to_string())
    })()));
    out.push(check("jet-modules", (|| {
        for p in 1..=4 {
            for l in [-3, 0, 2] {
                let r = JetModule::closed(l, p)?.check();
                ensure(r.all(), format!("closed p={p} λ₀={l}: {r:?}"))?;
                for par in 0..=1 {
                    let r = JetModule::open(l, par, 4, p)?.check();
                    ensure(r.all(), format!("open p={p} λ₀={l}: {r:?}"))?;
                }
            }
        }
        Ok("1 ≤ p ≤ 4, closed and open".to_string())
    })()));
    out.push(check("oracle-equivalence", oracle_equivalence()));
    out.push(check("duality", duality_check()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_orbit_case() {
        let c = VerificationCase::new(Family::closed_orbit(), vec![-4], vec![], Window::new(vec![(-30, 30)]).unwrap())
            .unwrap();
        let r = run_case(&c).unwrap();
        assert!(r.is_match(), "{}", r.to_json());
        let weights: Vec<i64> = r.side(true, 0).iter().map(|e| e.weight[0]).collect();
        assert_eq!(weights, (-2..=30).step_by(2).collect::<Vec<_>>());
        assert!(r.side(true, 0).iter().all(|e| e.mult == 1));
        assert_eq!(r.pairs_compared, vec![DegreePair { s: 0, j: 0 }]);
        assert_eq!(r.vanishing, vec![1]);
    }

    #[test]
    fn borel_weil_bott_case() {
        let c = VerificationCase::new(Family::BorelWeilBott, vec![3], vec![], Window::new(vec![(0, 10)]).unwrap())
            .unwrap();
        let r = run_case(&c).unwrap();
        assert!(r.is_match());
        assert_eq!(r.pairs_compared, vec![DegreePair { s: 0, j: 1 }, DegreePair { s: 1, j: 0 }]);
        let h0 = r.side(false, 0);
        assert_eq!((h0.len(), h0[0].weight[0]), (1, 3));
        assert!(r.side(true, 0).is_empty());
    }

    #[test]
    fn report_json_shape() {
        let c = VerificationCase::new(Family::open_orbit(), vec![1], vec![0], Window::new(vec![(-4, 4)]).unwrap())
            .unwrap();
        let r = run_case(&c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "exact-match");
        assert_eq!(v["lambda"], 1);
        assert_eq!(v["family"], "B");
        assert!(v["side_a"][0]["mult"].is_i64());
        assert!(v["ledger"]["canonical_Y"].is_i64());
        assert_eq!(r.to_json(), run_case(&c).unwrap().to_json());
    }

    #[test]
    fn fixture_mismatch_is_reported() {
        let mut wrong = Character::ktypes();
        wrong.add(Weight(vec![0]), 1);
        let c = VerificationCase::new(Family::BorelWeilBott, vec![-1], vec![], Window::new(vec![(0, 4)]).unwrap())
            .unwrap()
            .with_fixture(vec![wrong]);
        let r = run_case(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert_eq!(r.first_difference.unwrap().weight, vec![0]);
    }

    #[test]
    fn small_margin_rejected() {
        let w = Window::with_margin(vec![(0, 2)], 1).unwrap();
        assert!(matches!(
            VerificationCase::new(Family::closed_orbit(), vec![-2], vec![], w),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn families_parse() {
        assert_eq!(parse_family("A", None).unwrap(), Family::closed_orbit());
        assert_eq!(parse_family("D", Some("A,B")).unwrap().factors().len(), 2);
        assert!(parse_family("E", None).is_err());
        assert!(parse_family("D", Some("A")).is_err());
        assert_eq!(describe(&Family::open_orbit()).unwrap()["dim_h_mod_l"], 2);
    }

    #[test]
    fn negative_controls() {
        assert!(matches!(corrupted_sl2().unwrap().verify(), Err(Error::Jacobi(..))));
        assert!(corrupted_sign_block().unwrap().is_some());
    }

    #[test]
    fn csv_rows() {
        let c = VerificationCase::new(Family::closed_orbit(), vec![-2], vec![], Window::new(vec![(0, 4)]).unwrap())
            .unwrap();
        let mut buf = Vec::new();
        write_csv(&[run_case(&c).unwrap()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * 3);
    }
}
