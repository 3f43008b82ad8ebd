//! The geometric side on `P^1` for `g = sl2`.
//!
//! Differential operators live on one of the two standard charts, `z` or
//! `w = 1/z`. `SL(2)` acts by Möbius transformations and `ξ ↦ ξ_X` is taken
//! through `exp(-tξ)`, so it is a homomorphism of Lie algebras.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{self, q, qpow, Q, SparseMatrix};
use crate::gkmod::{peel_sl2_types, Character, GradedModule, Weight, Window};
use crate::liealg::{self, ChartPoint, Family, FactorKind, LCoord, PairData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    Z,
    W,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::Z => "z",
            Chart::W => "w",
        }
    }
}

/// Laurent polynomial in the chart coordinate.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, Q>);

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.0.iter().map(|(k, c)| format!("{c}·x^{k}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn monomial(k: i64, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.0.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (k, c) in o.terms() {
            r.add_term(k, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Laurent {
        let mut r = Laurent::zero();
        for (k, c) in self.terms() {
            r.add_term(k, c * s);
        }
        r
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (a, c) in self.terms() {
            for (b, d) in o.terms() {
                r.add_term(a + b, c * d);
            }
        }
        r
    }

    pub fn derivative(&self) -> Laurent {
        let mut r = Laurent::zero();
        for (k, c) in self.terms() {
            r.add_term(k - 1, c * q(k));
        }
        r
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// Panics on a negative power at zero.
    pub fn eval(&self, x: &Q) -> Q {
        self.terms().map(|(k, c)| c * qpow(x, k)).sum()
    }
}

/// A differential operator `Σ_b p_b(x) ∂^b` on one chart.
#[derive(Clone, PartialEq, Eq)]
pub struct ChartOp {
    pub chart: Chart,
    coeffs: Vec<Laurent>,
}

impl fmt::Debug for ChartOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.chart.name())?;
        for (b, p) in self.coeffs.iter().enumerate() {
            if !p.is_zero() {
                write!(f, " ({p:?})∂^{b}")?;
            }
        }
        Ok(())
    }
}

/// Ordinary notation in the chart coordinate, e.g. `z^2∂ - 3z`.
impl fmt::Display for ChartOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.chart.name();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (b, p) in self.coeffs.iter().enumerate().rev() {
            for (k, c) in p.0.iter().rev() {
                let neg = *c < Q::zero();
                let a = c.abs();
                let mut body = String::new();
                let bare = b > 0 || *k != 0;
                if !(a.is_one() && bare) {
                    body.push_str(&a.to_string());
                }
                match *k {
                    0 => {}
                    1 => body.push_str(x),
                    k => body.push_str(&format!("{x}^{k}")),
                }
                match b {
                    0 => {}
                    1 => body.push('∂'),
                    b => body.push_str(&format!("∂^{b}")),
                }
                parts.push((neg, body));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl ChartOp {
    pub fn zero(chart: Chart) -> Self {
        ChartOp {
            chart,
            coeffs: Vec::new(),
        }
    }

    /// From `(power of x, power of ∂, coefficient)` triples.
    pub fn from_terms(chart: Chart, terms: &[(i64, usize, Q)]) -> Self {
        let mut op = Self::zero(chart);
        for (a, b, c) in terms {
            op.add_term(*a, *b, c.clone());
        }
        op
    }

    pub fn multiplication(chart: Chart, p: Laurent) -> Self {
        ChartOp {
            chart,
            coeffs: vec![p],
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Laurent::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    fn add_term(&mut self, a: i64, b: usize, c: Q) {
        if self.coeffs.len() <= b {
            self.coeffs.resize(b + 1, Laurent::zero());
        }
        self.coeffs[b].add_term(a, c);
        *self = std::mem::replace(self, Self::zero(self.chart)).trimmed();
    }

    pub fn coeff(&self, b: usize) -> Laurent {
        self.coeffs.get(b).cloned().unwrap_or_default()
    }

    /// Highest power of `∂`; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn vector_part(&self) -> Laurent {
        self.coeff(1)
    }

    pub fn zero_order(&self) -> Laurent {
        self.coeff(0)
    }

    pub fn add(&self, o: &ChartOp) -> ChartOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        ChartOp {
            chart: self.chart,
            coeffs: (0..n).map(|b| self.coeff(b).add(&o.coeff(b))).collect(),
        }
        .trimmed()
    }

    pub fn scale(&self, s: &Q) -> ChartOp {
        ChartOp {
            chart: self.chart,
            coeffs: self.coeffs.iter().map(|p| p.scale(s)).collect(),
        }
        .trimmed()
    }

    pub fn sub(&self, o: &ChartOp) -> ChartOp {
        self.add(&o.scale(&-Q::one()))
    }

    /// Composition `self ∘ o`, using `∂^a p = Σ_j C(a,j) p^{(j)} ∂^{a-j}`.
    pub fn mul(&self, o: &ChartOp) -> ChartOp {
        let mut out = ChartOp::zero(self.chart);
        for (a, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, r) in o.coeffs.iter().enumerate() {
                let mut d = r.clone();
                for j in 0..=a {
                    if d.is_zero() {
                        break;
                    }
                    let c = q(binomial(a as i64, j as i64));
                    for (k, coef) in p.mul(&d).terms() {
                        out.add_term(k, a + b - j, coef * &c);
                    }
                    d = d.derivative();
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &ChartOp) -> ChartOp {
        self.mul(o).sub(&o.mul(self))
    }

    /// `self(x^s)` for a possibly fractional exponent `s`, as
    /// `(exponent, coefficient)` pairs.
    pub fn apply_monomial(&self, s: &Q) -> Vec<(Q, Q)> {
        let mut out: BTreeMap<Q, Q> = BTreeMap::new();
        for (b, p) in self.coeffs.iter().enumerate() {
            let falling: Q = (0..b).map(|j| s - q(j as i64)).product();
            if falling.is_zero() {
                continue;
            }
            for (k, c) in p.terms() {
                let e = out.entry(s - q(b as i64) + q(k)).or_insert_with(Q::zero);
                *e += c * &falling;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn apply(&self, f: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (k, c) in f.terms() {
            for (e, d) in self.apply_monomial(&q(k)) {
                r.add_term(exactla::to_i64(&e).expect("integer exponent"), d * c);
            }
        }
        r
    }

    /// Rewrites a `z`-chart operator in `w = 1/z`, then conjugates by `w^c`.
    pub fn to_w_chart(&self, c: i64) -> Result<ChartOp> {
        if self.chart != Chart::Z {
            return Err(Error::Invalid("to_w_chart expects a z-chart operator".into()));
        }
        // ∂_z = -w² ∂_w
        let dz = ChartOp::from_terms(Chart::W, &[(2, 1, q(-1))]);
        let mut out = ChartOp::zero(Chart::W);
        let mut power = ChartOp::from_terms(Chart::W, &[(0, 0, q(1))]);
        for p in &self.coeffs {
            let mut pw = Laurent::zero();
            for (k, coef) in p.terms() {
                pw.add_term(-k, coef.clone());
            }
            out = out.add(&ChartOp::multiplication(Chart::W, pw).mul(&power));
            power = power.mul(&dz);
        }
        let left = ChartOp::multiplication(Chart::W, Laurent::monomial(c, q(1)));
        let right = ChartOp::multiplication(Chart::W, Laurent::monomial(-c, q(1)));
        Ok(left.mul(&out).mul(&right))
    }
}

/// `ξ_X` for the `i`-th basis element `(e, h, f)` of `sl2`, in the `z` chart.
pub fn vector_field(i: usize) -> ChartOp {
    vector_field_in(Chart::Z, i)
}

pub fn vector_field_in(chart: Chart, i: usize) -> ChartOp {
    twisted_rep_in(chart, 0).rho[i].clone()
}

/// First-order realization of `sl2` in a twisted sheaf of differential operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedRep {
    pub lambda0: i64,
    pub chart: Chart,
    pub rho: [ChartOp; 3],
}

impl TwistedRep {
    /// `[ρ(ξ), ρ(η)] = ρ([ξ, η])` on all basis pairs.
    pub fn check_brackets(&self) -> Result<()> {
        let g = liealg::sl2();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = self.rho[i].commutator(&self.rho[j]);
                let mut rhs = ChartOp::zero(self.chart);
                for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                    rhs = rhs.add(&self.rho[k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::Invalid(format!("twisted rep bracket ({i},{j}) fails")));
                }
            }
        }
        Ok(())
    }

    /// Scalar by which an element acts on the fiber at a chart point: the
    /// zero-order part of `ρ(ξ)` there. Only meaningful on the stabilizer.
    pub fn fiber_value(&self, xi: &[Q], at: &Q) -> Q {
        xi.iter()
            .zip(&self.rho)
            .map(|(c, op)| c * op.zero_order().eval(at))
            .sum()
    }
}

/// `ρ(e) = -∂`, `ρ(h) = -2z∂ + λ₀`, `ρ(f) = z²∂ - λ₀z`.
pub fn twisted_rep(lambda0: i64) -> TwistedRep {
    let l = q(lambda0);
    TwistedRep {
        lambda0,
        chart: Chart::Z,
        rho: [
            ChartOp::from_terms(Chart::Z, &[(0, 1, q(-1))]),
            ChartOp::from_terms(Chart::Z, &[(1, 1, q(-2)), (0, 0, l.clone())]),
            ChartOp::from_terms(Chart::Z, &[(2, 1, q(1)), (1, 0, -l)]),
        ],
    }
}

/// The same twisted representation seen in the `w` chart, trivialized so
/// that all operators have polynomial coefficients.
pub fn twisted_rep_in(chart: Chart, lambda0: i64) -> TwistedRep {
    let z = twisted_rep(lambda0);
    match chart {
        Chart::Z => z,
        Chart::W => TwistedRep {
            lambda0,
            chart,
            rho: z.rho.map(|op| op.to_w_chart(lambda0).expect("z-chart input")),
        },
    }
}

/// One-dimensional twists in the geometric side, recorded as the torus
/// weight each contributes at the base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Ledger {
    pub kl_twist: i64,
    pub canonical_y: i64,
    pub anticanonical_x: i64,
}

impl Ledger {
    pub fn for_factor(kind: FactorKind) -> Ledger {
        match kind {
            FactorKind::ClosedZero => Ledger {
                kl_twist: 0,
                canonical_y: 0,
                anticanonical_x: 2,
            },
            FactorKind::ClosedInfinity => Ledger {
                kl_twist: 0,
                canonical_y: 0,
                anticanonical_x: -2,
            },
            FactorKind::OpenOne => Ledger {
                kl_twist: 0,
                canonical_y: 0,
                anticanonical_x: 0,
            },
        }
    }

    pub fn borel_weil_bott() -> Ledger {
        Ledger {
            kl_twist: 0,
            canonical_y: -2,
            anticanonical_x: 2,
        }
    }

    pub fn for_family(family: &Family) -> Vec<Ledger> {
        match family {
            Family::BorelWeilBott => vec![Self::borel_weil_bott()],
            Family::Torus(fs) => fs.iter().map(|f| Self::for_factor(*f)).collect(),
        }
    }

    pub fn total(&self) -> i64 {
        self.kl_twist + self.canonical_y + self.anticanonical_x
    }

    /// Twist of the operators realizing the module. On a closed orbit the
    /// delta basis itself carries the normal weight, so the anticanonical
    /// entry is not part of the operator twist there.
    pub fn operator_twist(&self, kind: Option<FactorKind>, lambda0: i64) -> i64 {
        let intrinsic = match kind {
            Some(FactorKind::ClosedZero) | Some(FactorKind::ClosedInfinity) => self.anticanonical_x,
            _ => 0,
        };
        lambda0 + self.total() - intrinsic
    }
}

/// `i₊` of a point orbit: the module `C[∂]δ` with `x δ₀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaModule {
    pub chart: Chart,
    pub rep: TwistedRep,
}

/// Sparse vector in the delta basis.
pub type DeltaVec = BTreeMap<usize, Q>;

impl DeltaModule {
    pub fn new(chart: Chart, twist: i64) -> Self {
        DeltaModule {
            chart,
            rep: twisted_rep_in(chart, twist),
        }
    }

    /// Torus weight of `δ_n`.
    pub fn weight(&self, n: usize) -> i64 {
        let w = self.rep.lambda0 + 2 + 2 * n as i64;
        match self.chart {
            Chart::Z => w,
            Chart::W => -w,
        }
    }

    /// Applies an operator with polynomial coefficients: `x δ_n = -n δ_{n-1}`,
    /// `∂ δ_n = δ_{n+1}`.
    pub fn apply(&self, op: &ChartOp, v: &DeltaVec) -> Result<DeltaVec> {
        let mut out = DeltaVec::new();
        for (n, c) in v {
            for b in 0..=op.order().unwrap_or(0) {
                for (k, p) in op.coeff(b).terms() {
                    if k < 0 {
                        return Err(Error::Invalid("negative power acting on delta basis".into()));
                    }
                    let m = n + b;
                    if (k as usize) > m {
                        continue;
                    }
                    // x^k δ_m = (-1)^k m(m-1)…(m-k+1) δ_{m-k}
                    let fall: i64 = (0..k).map(|j| m as i64 - j).product();
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let coef = p * c * q(sign * fall);
                    let e = out.entry(m - k as usize).or_insert_with(Q::zero);
                    *e += coef;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn basis(n: usize) -> DeltaVec {
        DeltaVec::from([(n, q(1))])
    }

    pub fn coordinate() -> ChartOp {
        ChartOp::from_terms(Chart::Z, &[(1, 0, q(1))])
    }

    pub fn derivation() -> ChartOp {
        ChartOp::from_terms(Chart::Z, &[(0, 1, q(1))])
    }
}

/// Builds a graded module from a weighted basis and an action on keys.
fn graded_from_basis<Key: Ord + Clone>(
    window: &Window,
    weights: &[Weight],
    basis: Vec<(Weight, Key)>,
    mut act: impl FnMut(usize, &Key) -> Result<Vec<(Key, Q)>>,
) -> Result<GradedModule> {
    let mut module = GradedModule::new(window.clone(), weights.len());
    let mut index: BTreeMap<Key, (Weight, usize)> = BTreeMap::new();
    let mut by_weight: BTreeMap<Weight, Vec<Key>> = BTreeMap::new();
    for (w, k) in basis {
        by_weight.entry(w).or_default().push(k);
    }
    for (w, keys) in &by_weight {
        module.spaces.insert(w.clone(), keys.len());
        for (i, k) in keys.iter().enumerate() {
            index.insert(k.clone(), (w.clone(), i));
        }
    }
    for (gi, shift) in weights.iter().enumerate() {
        for (w, keys) in &by_weight {
            let target = w.add(shift);
            let Some(rows) = module.spaces.get(&target).copied() else {
                continue;
            };
            let mut trip = Vec::new();
            for (col, k) in keys.iter().enumerate() {
                for (img, c) in act(gi, k)? {
                    match index.get(&img) {
                        Some((tw, row)) if *tw == target => trip.push((*row, col, c)),
                        Some(_) => {
                            return Err(Error::Invalid("action does not respect the grading".into()))
                        }
                        None => {}
                    }
                }
            }
            module.actions[gi].insert(w.clone(), SparseMatrix::from_triplets(rows, keys.len(), trip)?);
        }
    }
    Ok(module)
}

fn sl2_weights() -> Vec<Weight> {
    vec![Weight(vec![2]), Weight(vec![0]), Weight(vec![-2])]
}

/// The delta module at `z = 0` (or `w = 0` for [`Chart::W`]) with the
/// operator twist `lambda0`, on the internal window of `window`.
pub fn delta_module_in(chart: Chart, lambda0: i64, window: &Window) -> Result<GradedModule> {
    let dm = DeltaModule::new(chart, lambda0);
    let inner = window.internal();
    let (lo, hi) = inner.bounds[0];
    let mut basis = Vec::new();
    for n in 0usize.. {
        let w = dm.weight(n);
        if (chart == Chart::Z && w > hi) || (chart == Chart::W && w < lo) {
            break;
        }
        if lo <= w && w <= hi {
            basis.push((Weight(vec![w]), n));
        }
    }
    graded_from_basis(window, &sl2_weights(), basis, |i, n| {
        Ok(dm.apply(&dm.rep.rho[i], &DeltaModule::basis(*n))?.into_iter().collect())
    })
}

/// The delta module of the closed orbit `{0}`, twisted so that `δ_n` has
/// weight `λ₀ + 2 + 2n`.
pub fn delta_module(lambda0: i64, window: &Window) -> Result<GradedModule> {
    let lg = Ledger::for_factor(FactorKind::ClosedZero);
    delta_module_in(Chart::Z, lg.operator_twist(Some(FactorKind::ClosedZero), lambda0), window)
}

/// Sections `z^{k + δ/2}` on the open orbit, with `δ = (parity - λ₀) mod 2`
/// so that all weights `λ₀ - 2k - δ` have the requested parity.
///
/// In the double-cover coordinate `t` with `z = t²` the basis is `t^j` for
/// `j ≡ δ`; `-1 ∈ M` acts on `t^j` by `(-1)^j`.
pub fn laurent_module(lambda0: i64, parity: u8, window: &Window) -> Result<GradedModule> {
    let rep = twisted_rep(lambda0);
    let delta = (i64::from(parity) - lambda0).rem_euclid(2);
    let (lo, hi) = window.internal().bounds[0];
    // weight λ₀ - j with j = 2s ≡ δ
    let basis: Vec<(Weight, i64)> = (lambda0 - hi..=lambda0 - lo)
        .filter(|j| (j - delta).rem_euclid(2) == 0)
        .map(|j| (Weight(vec![lambda0 - j]), j))
        .collect();
    let mut m = graded_from_basis(window, &sl2_weights(), basis, |i, j| {
        rep.rho[i]
            .apply_monomial(&exactla::qf(*j, 2))
            .into_iter()
            .map(|(e, c)| {
                let twice = e * q(2);
                exactla::to_i64(&twice)
                    .map(|k| (k, c))
                    .ok_or_else(|| Error::Invalid("exponent left the half-integer lattice".into()))
            })
            .collect()
    })?;
    m.parity_coords = vec![0];
    Ok(m)
}

/// `(H⁰, H¹)` of `O(n)` on `P^1` as `SL(2)` `K`-types, from the two-chart
/// Čech complex `C[z] ⊕ z^n C[1/z] → C[z, 1/z]`, weight `n - 2k` on `z^k`.
pub fn cech_cohomology_on(n: i64) -> Result<(Character, Character)> {
    let mut h0 = Character::torus();
    let mut h1 = Character::torus();
    for k in n.min(0) - 2..=n.max(0) + 2 {
        let c0 = usize::from(k >= 0) + usize::from(k <= n);
        let cols: Vec<Vec<Q>> = vec![vec![q(1), q(-1)][..c0].to_vec()];
        let d = SparseMatrix::from_dense(&cols);
        let zero_in = SparseMatrix::zeros(c0, 0);
        let zero_out = SparseMatrix::zeros(0, 1);
        let w = Weight(vec![n - 2 * k]);
        h0.add(w.clone(), exactla::homology_dim(&d, &zero_in)? as i64);
        h1.add(w, exactla::homology_dim(&zero_out, &d)? as i64);
    }
    Ok((peel_sl2_types(&h0)?, peel_sl2_types(&h1)?))
}

/// Values of `V`'s character on the pair's `h` basis, read off from the
/// twisted representations at the base points.
pub fn isotropy_values(pair: &PairData, lambda: &[i64]) -> Result<Vec<Q>> {
    let factors = match &pair.family {
        Family::BorelWeilBott => vec![FactorKind::ClosedZero],
        Family::Torus(fs) => fs.clone(),
    };
    if lambda.len() != factors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} parameters for {} factors",
            lambda.len(),
            factors.len()
        )));
    }
    let reps: Vec<(TwistedRep, ChartPoint)> = factors
        .iter()
        .zip(lambda)
        .map(|(f, l)| {
            let pt = f.base_point();
            (twisted_rep_in(pt.chart(), *l), pt)
        })
        .collect();
    Ok(pair
        .h
        .basis()
        .iter()
        .map(|x| {
            reps.iter()
                .enumerate()
                .map(|(j, (rep, pt))| rep.fiber_value(&x[3 * j..3 * j + 3], pt.coordinate()))
                .sum()
        })
        .collect())
}

/// `L`-weight of `V`: the Cartan values on `Full` coordinates, the given
/// parity on `Parity` coordinates.
pub fn isotropy_weight(pair: &PairData, lambda: &[i64], parity: &[u8]) -> Result<Weight> {
    let vals = isotropy_values(pair, lambda)?;
    let mut w = Vec::new();
    for (j, lc) in pair.l.iter().enumerate() {
        match lc {
            LCoord::Full => {
                let x = &pair.cartan[j];
                let coords = pair.h.coords(x).ok_or(Error::NotSubalgebra)?;
                let v: Q = coords.iter().zip(&vals).map(|(a, b)| a * b).sum();
                w.push(exactla::to_i64(&v).ok_or_else(|| Error::Invalid("non-integral weight".into()))?);
            }
            LCoord::Parity => w.push(i64::from(*parity.get(j).unwrap_or(&0))),
        }
    }
    Ok(Weight(w))
}

/// Characters of `H^s` of the geometric side, `s = 0..=dim U`, restricted to
/// `window` (torus weights for torus `K`, `K`-type labels for `K = SL(2)`).
pub fn geometric_side(
    pair: &PairData,
    lambda: &[i64],
    parity: &[u8],
    window: &Window,
) -> Result<Vec<Character>> {
    match &pair.family {
        Family::BorelWeilBott => {
            let n = Ledger::borel_weil_bott().operator_twist(None, lambda[0]);
            let (h0, h1) = cech_cohomology_on(n)?;
            Ok(vec![h0.restrict(window), h1.restrict(window)])
        }
        Family::Torus(fs) => {
            if lambda.len() != fs.len() || window.rank() != fs.len() {
                return Err(Error::DimensionMismatch("parameters, window and factors".into()));
            }
            let mut total: Option<Character> = None;
            for (j, f) in fs.iter().enumerate() {
                let w1 = Window::with_margin(vec![window.bounds[j]], window.margin)?;
                let lg = Ledger::for_factor(*f);
                let m = match f {
                    FactorKind::ClosedZero => {
                        delta_module_in(Chart::Z, lg.operator_twist(Some(*f), lambda[j]), &w1)?
                    }
                    FactorKind::ClosedInfinity => {
                        delta_module_in(Chart::W, lg.operator_twist(Some(*f), lambda[j]), &w1)?
                    }
                    FactorKind::OpenOne => laurent_module(
                        lg.operator_twist(Some(*f), lambda[j]),
                        *parity.get(j).unwrap_or(&0),
                        &w1,
                    )?,
                };
                let c = m.character();
                total = Some(match total {
                    None => c,
                    Some(t) => t.external_product(&c),
                });
            }
            let c = total.expect("at least one factor");
            Ok(vec![c.with_parity_coords(pair.parity_coords())])
        }
    }
}

/// `p`-jets along the orbit of sections of `V_X`, with the module structure
/// over functions given by the subset-sum formula.
///
/// With `normal_dirs = 1` the orbit is the point `z = 0`, the normal vector
/// field is `ζ_X = e_X = -∂`, and component `s` of a section `σ` is
/// `(ζ_X^s σ)(0)`. With `normal_dirs = 0` the orbit is open and jets are
/// sections on a Laurent window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetModule {
    pub p: usize,
    pub lambda0: i64,
    pub normal_dirs: usize,
    /// Section exponents in units of `1/2` (open orbit only).
    pub exponents: Vec<i64>,
}

/// Nondecreasing multi-indices of length `s` over `1..=l`.
pub fn multi_indices(s: usize, l: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for prefix in multi_indices(s - 1, l) {
        let start = prefix.last().copied().unwrap_or(1);
        for i in start..=l {
            let mut v = prefix.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Which conditions of the associated-module definition hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct JetReport {
    pub quotient_equivariant: bool,
    pub free: bool,
    pub action_equivariant: bool,
    pub k_compatible: bool,
    pub fiber_iso: bool,
}

impl JetReport {
    pub fn all(&self) -> bool {
        self.quotient_equivariant && self.free && self.action_equivariant && self.k_compatible && self.fiber_iso
    }
}

impl JetModule {
    /// Closed orbit `{0}`: `V` is the character `λ(h) = λ₀, λ(f) = 0`.
    pub fn closed(lambda0: i64, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Invalid("jet order must be at least 1".into()));
        }
        Ok(JetModule {
            p,
            lambda0,
            normal_dirs: 1,
            exponents: (0..p as i64).map(|s| 2 * s).collect(),
        })
    }

    /// Open orbit: sections `z^{j/2}` with `j ≡ δ (mod 2)` in `[-reach, reach]`.
    pub fn open(lambda0: i64, parity: u8, reach: i64, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Invalid("jet order must be at least 1".into()));
        }
        let delta = (i64::from(parity) - lambda0).rem_euclid(2);
        Ok(JetModule {
            p,
            lambda0,
            normal_dirs: 0,
            exponents: (-reach..=reach).filter(|j| (j - delta).rem_euclid(2) == 0).collect(),
        })
    }

    /// Component labels `(s, multi-index)` with `s < p`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        if self.normal_dirs == 0 {
            return vec![Vec::new()];
        }
        (0..self.p).flat_map(|s| multi_indices(s, self.normal_dirs)).collect()
    }

    fn zeta() -> ChartOp {
        vector_field(0)
    }

    /// Jet of a section given as coefficients on `self.exponents`. For the
    /// open orbit the jet space is the section space itself.
    pub fn jet_of(&self, section: &[Q]) -> Vec<Vec<Q>> {
        if self.normal_dirs == 0 {
            return vec![section.to_vec()];
        }
        let mut sigma = Laurent::zero();
        for (e, c) in self.exponents.iter().zip(section) {
            sigma.add_term(e / 2, c.clone());
        }
        self.components()
            .iter()
            .map(|idx| {
                let mut f = sigma.clone();
                for _ in idx {
                    f = Self::zeta().apply(&f);
                }
                vec![f.coeff(0)]
            })
            .collect()
    }

    /// `f · v` by the subset-sum formula. For the open orbit, `f` multiplies
    /// sections; exponents leaving the window are dropped.
    pub fn act_function(&self, f: &Laurent, v: &[Vec<Q>]) -> Vec<Vec<Q>> {
        if self.normal_dirs == 0 {
            let mut out = vec![Q::zero(); self.exponents.len()];
            for (i, e) in self.exponents.iter().enumerate() {
                for (k, c) in f.terms() {
                    if let Some(t) = self.exponents.iter().position(|x| *x == e + 2 * k) {
                        out[t] += c * &v[0][i];
                    }
                }
            }
            return vec![out];
        }
        let comps = self.components();
        comps
            .iter()
            .map(|idx| {
                let s = idx.len();
                let mut total = Q::zero();
                for mask in 0u32..(1 << s) {
                    let (a, b): (Vec<usize>, Vec<usize>) =
                        (0..s).partition(|i| mask & (1 << i) != 0);
                    let mut g = f.clone();
                    for _ in &a {
                        g = Self::zeta().apply(&g);
                    }
                    let rest: Vec<usize> = b.iter().map(|i| idx[*i]).collect();
                    let pos = comps.iter().position(|c| *c == rest).expect("shorter index");
                    total += g.eval(&Q::zero()) * &v[pos][0];
                }
                vec![total]
            })
            .collect()
    }

    /// Torus element `a = b²` acting on sections by `z^{j/2} ↦ a^{λ₀-j} z^{j/2}`.
    fn k_on_section(&self, b: &Q, section: &[Q]) -> Vec<Q> {
        self.exponents
            .iter()
            .zip(section)
            .map(|(j, c)| c * qpow(b, 2 * self.lambda0 - 2 * j))
            .collect()
    }

    fn basis_section(&self, i: usize) -> Vec<Q> {
        let mut s = vec![Q::zero(); self.exponents.len()];
        s[i] = q(1);
        s
    }

    /// Matrix of the jet map on the section basis; square and invertible.
    fn jet_matrix(&self) -> Vec<Vec<Q>> {
        let cols: Vec<Vec<Q>> = (0..self.exponents.len())
            .map(|i| self.jet_of(&self.basis_section(i)).concat())
            .collect();
        SparseMatrix::from_dense(&cols).transpose().to_dense()
    }

    fn flat(v: &[Vec<Q>]) -> Vec<Q> {
        v.concat()
    }

    /// `K` acting on jets, transported from sections.
    pub fn k_action(&self, b: &Q, v: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let jm = self.jet_matrix();
        let sec = exactla::solve(&jm, &Self::flat(v)).expect("jet map is bijective");
        self.jet_of(&self.k_on_section(b, &sec))
    }

    /// `ρ(ξ)` for `ξ ∈ sl2` (coordinates), transported to jets.
    pub fn lie_action(&self, xi: &[Q], v: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let jm = self.jet_matrix();
        let sec = exactla::solve(&jm, &Self::flat(v)).expect("jet map is bijective");
        let rep = twisted_rep(self.lambda0);
        let mut out: BTreeMap<Q, Q> = BTreeMap::new();
        for (j, c) in self.exponents.iter().zip(&sec) {
            for (k, op) in rep.rho.iter().enumerate() {
                for (e, d) in op.apply_monomial(&exactla::qf(*j, 2)) {
                    *out.entry(e).or_insert_with(Q::zero) += d * c * &xi[k];
                }
            }
        }
        let image: Vec<Q> = self
            .exponents
            .iter()
            .map(|j| out.get(&exactla::qf(*j, 2)).cloned().unwrap_or_else(Q::zero))
            .collect();
        self.jet_of(&image)
    }

    /// Checks the five defining conditions of an associated module on this
    /// truncation with a few sample torus elements and functions.
    pub fn check(&self) -> JetReport {
        let samples = [q(2), q(3), exactla::qf(1, 2)];
        let n = self.exponents.len();
        let basis: Vec<Vec<Vec<Q>>> = (0..n).map(|i| self.jet_of(&self.basis_section(i))).collect();

        // (1) dropping the top order commutes with K
        let quotient_equivariant = self.p == 1
            || self.normal_dirs == 0
            || {
                let lower = JetModule::closed(self.lambda0, self.p - 1).expect("p >= 2");
                let keep = lower.components().len();
                samples.iter().all(|b| {
                    basis.iter().all(|v| {
                        let down: Vec<Vec<Q>> = v[..keep].to_vec();
                        lower.k_action(b, &down) == self.k_action(b, v)[..keep].to_vec()
                    })
                })
            };

        // (2) free over the truncated functions: ψ(f) = jet(f · generator) is bijective
        let free = {
            let m = SparseMatrix::from_dense(&self.jet_matrix());
            exactla::rank(&m) == n && m.rows() == n
        };

        // (3) a·(f·v) = (a·f)·(a·v), with z of weight -2
        let fns = [
            Laurent::monomial(1, q(1)),
            Laurent::monomial(2, q(3)).add(&Laurent::constant(q(-1))),
        ];
        let action_equivariant = samples.iter().all(|b| {
            fns.iter().all(|f| {
                let mut af = Laurent::zero();
                for (k, c) in f.terms() {
                    af.add_term(k, c * qpow(b, -4 * k));
                }
                basis.iter().all(|v| {
                    self.k_action(b, &self.act_function(f, v))
                        == self.act_function(&af, &self.k_action(b, v))
                })
            })
        });

        // (4) the differential of the K-action is ρ(h): weights λ₀ - j on z^{j/2}
        let k_compatible = basis.iter().zip(&self.exponents).all(|(v, j)| {
            let hv = self.lie_action(&[q(0), q(1), q(0)], v);
            let expect: Vec<Vec<Q>> = v
                .iter()
                .map(|c| c.iter().map(|x| x * q(self.lambda0 - j)).collect())
                .collect();
            hv == expect
        });

        // (5) first-order jets are the fiber, with the isotropy character
        let fiber_iso = if self.normal_dirs == 1 {
            let first = JetModule::closed(self.lambda0, 1).expect("p = 1");
            let v = first.jet_of(&[q(1)]);
            first.lie_action(&[q(0), q(1), q(0)], &v) == vec![vec![q(self.lambda0)]]
                && first.lie_action(&[q(0), q(0), q(1)], &v) == vec![vec![Q::zero()]]
        } else {
            // b1 fixes z = 1 and acts on the fiber there by -λ₀
            let rep = twisted_rep(self.lambda0);
            let b1 = [[q(1), q(0), q(1)], [q(0), q(1), q(2)]];
            b1.iter().all(|xi| {
                let vf: Q = (0..3).map(|k| rep.rho[k].vector_part().eval(&q(1)) * &xi[k]).sum();
                vf.is_zero() && rep.fiber_value(xi, &q(1)) == q(-self.lambda0)
            })
        };

        JetReport {
            quotient_equivariant,
            free,
            action_equivariant,
            k_compatible,
            fiber_iso,
        }
    }
}

/// Result of checking the order filtration on a delta module.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FiltrationReport {
    pub p: usize,
    /// `dim F_q` for `q = 0..=p`, each computed as the kernel of `z^{q+1}`.
    pub dims: Vec<usize>,
    pub equals_span: bool,
    pub injective: bool,
    pub exhaustive: bool,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.equals_span && self.injective && self.exhaustive
    }
}

/// `F_q` is the subspace killed by `z^{q+1}`, computed on `span{δ_0..δ_top}`.
pub fn filtration_check(module: &DeltaModule, p: usize, top: usize) -> Result<FiltrationReport> {
    let z = DeltaModule::coordinate();
    let kernel = |q_: usize| -> Result<Vec<Vec<Q>>> {
        let mut zq = ChartOp::from_terms(Chart::Z, &[(0, 0, q(1))]);
        for _ in 0..=q_ {
            zq = zq.mul(&z);
        }
        let mut trip = Vec::new();
        for n in 0..=top {
            for (r, c) in module.apply(&zq, &DeltaModule::basis(n))? {
                trip.push((r, n, c));
            }
        }
        Ok(exactla::kernel_basis(&SparseMatrix::from_triplets(top + 1, top + 1, trip)?))
    };
    let mut dims = Vec::new();
    let mut equals_span = true;
    for q_ in 0..=p {
        let k = kernel(q_)?;
        dims.push(k.len());
        let span_ok = k.len() == (q_ + 1).min(top + 1)
            && k.iter().all(|v| v.iter().skip(q_ + 1).all(Zero::is_zero));
        equals_span &= span_ok;
    }
    let injective = dims.windows(2).all(|w| w[0] <= w[1]);
    let exhaustive = kernel(top)?.len() == top + 1;
    Ok(FiltrationReport {
        p,
        dims,
        equals_span,
        injective,
        exhaustive,
    })
}
