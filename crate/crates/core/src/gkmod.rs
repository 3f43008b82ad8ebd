//! Weight-graded `(g, K)`-modules on a finite window, `(h, L)`-modules, and
//! characters.
//!
//! Both sides of the comparison produce a [`Character`]: a multiplicity per
//! torus weight, or per `SL(2)` `K`-type. Bases inside weight spaces are never
//! compared directly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{self, q, Q, SparseMatrix};
use crate::liealg::{KKind, LCoord, LieAlg, PairData};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// Per-coordinate bounds on the weights to report. Constructions work on
/// an enlarged internal window of `margin` extra root steps on each side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub bounds: Vec<(i64, i64)>,
    pub margin: u32,
}

pub const DEFAULT_MARGIN: u32 = 4;

impl Window {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self> {
        Self::with_margin(bounds, DEFAULT_MARGIN)
    }

    pub fn with_margin(bounds: Vec<(i64, i64)>, margin: u32) -> Result<Self> {
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::Invalid(format!("window bounds {bounds:?} have lower > upper")));
        }
        Ok(Window { bounds, margin })
    }

    /// The same interval on each of `rank` coordinates.
    pub fn cube(rank: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![(lo, hi); rank])
    }

    pub fn rank(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.0.len() == self.bounds.len()
            && w.0.iter().zip(&self.bounds).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    pub fn enlarged(&self, extra: u32) -> Window {
        let m = 2 * i64::from(extra);
        Window {
            bounds: self.bounds.iter().map(|(lo, hi)| (lo - m, hi + m)).collect(),
            margin: self.margin,
        }
    }

    /// The window the engine computes on before restricting to `self`.
    pub fn internal(&self) -> Window {
        self.enlarged(self.margin)
    }

    pub fn with_extra_margin(&self, extra: u32) -> Window {
        Window {
            bounds: self.bounds.clone(),
            margin: self.margin + extra,
        }
    }

    /// All weights in the window, lexicographic order.
    pub fn weights(&self) -> Vec<Weight> {
        let mut out = vec![Vec::new()];
        for (lo, hi) in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (*lo..=*hi).map(move |x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Weight).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharacterKind {
    /// Multiplicities of torus weights.
    TorusWeights,
    /// Multiplicities of irreducible `SL(2)`-modules, indexed by highest weight.
    Sl2KTypes,
}

/// Multiplicity function, finitely supported. Signed so that Euler
/// characteristics live in the same type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub kind: CharacterKind,
    mults: BTreeMap<Weight, i64>,
    /// Weight coordinates on which `M` only sees a sign; reported as parity.
    pub parity_coords: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub weight: Vec<i64>,
    pub multiplicity: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<u8>>,
}

/// Torus weights as `ν` or `ν×m`; `SL(2)` types as `V_n` or `V_n×m`.
impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .map(|(w, m)| {
                let label = match (self.kind, w.0.as_slice()) {
                    (CharacterKind::Sl2KTypes, [n]) => format!("V_{n}"),
                    (_, [x]) => x.to_string(),
                    (_, xs) => format!("{xs:?}"),
                };
                if *m == 1 {
                    label
                } else {
                    format!("{label}×{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Character {
    pub fn empty(kind: CharacterKind) -> Self {
        Character {
            kind,
            mults: BTreeMap::new(),
            parity_coords: Vec::new(),
        }
    }

    pub fn torus() -> Self {
        Self::empty(CharacterKind::TorusWeights)
    }

    pub fn ktypes() -> Self {
        Self::empty(CharacterKind::Sl2KTypes)
    }

    pub fn from_pairs(kind: CharacterKind, pairs: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Self {
        let mut c = Self::empty(kind);
        for (w, m) in pairs {
            c.add(Weight(w), m);
        }
        c
    }

    pub fn with_parity_coords(mut self, coords: Vec<usize>) -> Self {
        self.parity_coords = coords;
        self
    }

    pub fn add(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mults.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.mults.iter().map(|(w, m)| (w, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn support(&self) -> Vec<Weight> {
        self.mults.keys().cloned().collect()
    }

    /// Character of the dual. For `SL(2)` `K`-types every irreducible is
    /// self-dual, so labels are unchanged.
    pub fn negate_weights(&self) -> Character {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        for (w, m) in self.iter() {
            match self.kind {
                CharacterKind::TorusWeights => c.add(w.neg(), m),
                CharacterKind::Sl2KTypes => c.add(w.clone(), m),
            }
        }
        c
    }

    pub fn shift(&self, by: &Weight) -> Character {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        for (w, m) in self.iter() {
            c.add(w.add(by), m);
        }
        c
    }

    pub fn sum(&self, o: &Character) -> Character {
        let mut c = self.clone();
        for (w, m) in o.iter() {
            c.add(w.clone(), m);
        }
        c
    }

    pub fn scaled(&self, k: i64) -> Character {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        for (w, m) in self.iter() {
            c.add(w.clone(), k * m);
        }
        c
    }

    pub fn restrict(&self, window: &Window) -> Character {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        for (w, m) in self.iter() {
            if window.contains(w) {
                c.add(w.clone(), m);
            }
        }
        c
    }

    /// Total dimension; `K`-types count with their dimension `n + 1`.
    pub fn dimension(&self) -> i64 {
        self.iter()
            .map(|(w, m)| match self.kind {
                CharacterKind::TorusWeights => m,
                CharacterKind::Sl2KTypes => m * (w.0[0] + 1),
            })
            .sum()
    }

    /// Smallest weight where the two characters differ.
    pub fn first_difference(&self, o: &Character) -> Option<Weight> {
        self.mults
            .keys()
            .chain(o.mults.keys())
            .filter(|w| self.get(w) != o.get(w))
            .min()
            .cloned()
    }

    /// Product character on the concatenated weight lattice.
    pub fn external_product(&self, o: &Character) -> Character {
        let shift = self.mults.keys().next().map_or(0, Weight::rank);
        let mut pc = self.parity_coords.clone();
        pc.extend(o.parity_coords.iter().map(|i| i + shift));
        let mut c = Character::empty(self.kind).with_parity_coords(pc);
        for (a, m) in self.iter() {
            for (b, n) in o.iter() {
                let mut w = a.0.clone();
                w.extend(&b.0);
                c.add(Weight(w), m * n);
            }
        }
        c
    }

    pub fn entries(&self) -> Vec<CharacterEntry> {
        self.iter()
            .map(|(w, m)| CharacterEntry {
                weight: w.0.clone(),
                multiplicity: m,
                parity: (!self.parity_coords.is_empty()).then(|| {
                    self.parity_coords
                        .iter()
                        .map(|&i| w.0[i].rem_euclid(2) as u8)
                        .collect()
                }),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.entries()).expect("plain data")
    }

    pub fn from_json(kind: CharacterKind, v: &serde_json::Value) -> Result<Character> {
        let entries: Vec<CharacterEntry> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut c = Character::empty(kind);
        for e in entries {
            c.add(Weight(e.weight), e.multiplicity);
        }
        Ok(c)
    }
}

/// Torus character of the irreducible `SL(2)`-module of highest weight `n`.
pub fn sl2_irrep_weights(n: i64) -> Character {
    let mut c = Character::torus();
    for j in 0..=n {
        c.add(Weight(vec![n - 2 * j]), 1);
    }
    c
}

/// Decomposes a finite, Weyl-symmetric torus character of `SL(2)` into
/// `K`-types by repeatedly removing the irreducible at the highest weight.
pub fn peel_sl2_types(c: &Character) -> Result<Character> {
    let mut rest = c.clone();
    let mut out = Character::ktypes();
    while let Some((top, m)) = rest.iter().last().map(|(w, m)| (w.0[0], m)) {
        if top < 0 || m < 0 {
            return Err(Error::Invalid(format!(
                "torus character is not a sum of SL2 irreducibles (top weight {top}, mult {m})"
            )));
        }
        out.add(Weight(vec![top]), m);
        rest = rest.sum(&sl2_irrep_weights(top).scaled(-m));
    }
    Ok(out)
}

/// Torus character of a sum of `SL(2)` `K`-types.
pub fn ktypes_to_weights(c: &Character) -> Character {
    let mut out = Character::torus();
    for (w, m) in c.iter() {
        out = out.sum(&sl2_irrep_weights(w.0[0]).scaled(m));
    }
    out
}

/// A finite-dimensional `(h, L)`-module: `h` acts through matrices indexed
/// by the pair's `h` basis; `L` acts diagonally, with a weight on each `Full`
/// coordinate and a sign (stored mod 2) on each `Parity` coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HModule {
    pub actions: Vec<SparseMatrix>,
    pub l_weights: Vec<Weight>,
}

impl HModule {
    pub fn zero(h_dim: usize, rank: usize) -> Self {
        let _ = rank;
        HModule {
            actions: vec![SparseMatrix::zeros(0, 0); h_dim],
            l_weights: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.l_weights.len()
    }

    /// Matrix of an arbitrary element of `h`, given in `h`-basis coordinates.
    pub fn act_coords(&self, coords: &[Q]) -> SparseMatrix {
        let n = self.dim();
        coords
            .iter()
            .zip(&self.actions)
            .filter(|(c, _)| !c.is_zero())
            .fold(SparseMatrix::zeros(n, n), |acc, (c, a)| acc.add(&a.scale(c)).expect("square"))
    }

    /// The one-dimensional case: the scalar by which each `h` basis element acts.
    pub fn scalar_character(&self) -> Option<Vec<Q>> {
        (self.dim() == 1).then(|| self.actions.iter().map(|a| a.get(0, 0)).collect())
    }

    pub fn dual(&self) -> HModule {
        HModule {
            actions: self.actions.iter().map(|a| a.transpose().scale(&-Q::one())).collect(),
            l_weights: self.l_weights.iter().map(Weight::neg).collect(),
        }
    }

    /// `self ⊗ t` for a one-dimensional `t`.
    pub fn tensor_onedim(&self, t: &HModule) -> Result<HModule> {
        let chi = t
            .scalar_character()
            .ok_or_else(|| Error::Invalid("tensor_onedim needs a one-dimensional twist".into()))?;
        let n = self.dim();
        Ok(HModule {
            actions: self
                .actions
                .iter()
                .zip(&chi)
                .map(|(a, c)| a.add(&SparseMatrix::identity(n).scale(c)).expect("square"))
                .collect(),
            l_weights: self.l_weights.iter().map(|w| w.add(&t.l_weights[0])).collect(),
        })
    }

    /// Checks the representation property on `h` and compatibility of the
    /// `l`-action with the `L`-weights.
    pub fn verify(&self, pair: &PairData) -> Result<()> {
        let hb = pair.h.basis();
        for (i, x) in hb.iter().enumerate() {
            for (j, y) in hb.iter().enumerate() {
                let br = pair.g.bracket(x, y);
                let coords = pair.h.coords(&br).ok_or(Error::NotSubalgebra)?;
                let lhs = self.actions[i]
                    .mul(&self.actions[j])?
                    .sub(&self.actions[j].mul(&self.actions[i])?)?;
                if lhs != self.act_coords(&coords) {
                    return Err(Error::Invalid(format!("h-action fails bracket ({i},{j})")));
                }
            }
        }
        for (i, x) in pair.l_basis().iter().enumerate() {
            let a = &self.actions[i];
            for (v, w) in self.l_weights.iter().enumerate() {
                let expect = l_pairing(pair, x, w);
                let col: Vec<Q> = (0..self.dim()).map(|r| a.get(r, v)).collect();
                for (r, c) in col.iter().enumerate() {
                    let e = if r == v { expect.clone() } else { Q::zero() };
                    if *c != e {
                        return Err(Error::Invalid(
                            "l-action is not the differential of the L-weights".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `χ(x)` for `x` in the Cartan span and an `L`-weight `χ`.
fn l_pairing(pair: &PairData, x: &[Q], w: &Weight) -> Q {
    let coords = exactla::coordinates_in(&pair.cartan, x).expect("l lies in the Cartan");
    coords
        .iter()
        .zip(&w.0)
        .zip(&pair.l)
        .filter(|(_, c)| **c == LCoord::Full)
        .map(|((a, b), _)| a * q(*b))
        .sum()
}

/// One-dimensional `(h, L)`-module on which `h` acts by `lambda` (values on
/// the pair's `h` basis) and `L` by `k_type`.
pub fn one_dim_module(pair: &PairData, lambda: &[Q], k_type: &Weight) -> Result<HModule> {
    let hb = pair.h.basis();
    if lambda.len() != hb.len() || k_type.rank() != pair.rank() {
        return Err(Error::DimensionMismatch("character length".into()));
    }
    for x in hb {
        for y in hb {
            let coords = pair.h.coords(&pair.g.bracket(x, y)).ok_or(Error::NotSubalgebra)?;
            let val: Q = coords.iter().zip(lambda).map(|(a, b)| a * b).sum();
            if !val.is_zero() {
                return Err(Error::NonInvariantCharacter);
            }
        }
    }
    let m = HModule {
        actions: lambda
            .iter()
            .map(|c| SparseMatrix::from_dense(&[vec![c.clone()]]))
            .collect(),
        l_weights: vec![pair.restrict_to_l(k_type)],
    };
    m.verify(pair)?;
    Ok(m)
}

/// Which top exterior power to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopQuotient {
    /// `⋀^top(g/h)` with `h` acting by the trace of `ad` on `g/h`.
    GModH,
    /// `⋀^top(k/l)`: `h` acts by zero, `L` by the adjoint weight sum.
    KModL,
}

/// The one-dimensional `(h, L)`-module `⋀^top` of a quotient.
pub fn lambda_top(pair: &PairData, which: TopQuotient) -> Result<HModule> {
    let g = &pair.g;
    let hb = pair.h.basis();
    let (sub, ambient): (Vec<Vec<Q>>, Vec<Vec<Q>>) = match which {
        TopQuotient::GModH => (hb.to_vec(), (0..g.dim()).map(|i| g.basis(i)).collect()),
        TopQuotient::KModL => (pair.l_basis().to_vec(), pair.k.embedding.clone()),
    };
    let complement = extend_to_basis(&sub, &ambient);
    let weight = complement.iter().fold(Weight::zero(pair.rank()), |acc, v| {
        acc.add(&pair.weight_of(v).unwrap_or_else(|| Weight::zero(pair.rank())))
    });
    let lambda: Vec<Q> = match which {
        TopQuotient::KModL => vec![Q::zero(); hb.len()],
        TopQuotient::GModH => hb
            .iter()
            .map(|x| {
                // trace of ad(x) on g/h in the basis (h, complement)
                let mut full = sub.clone();
                full.extend(complement.iter().cloned());
                complement
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let img = g.bracket(x, c);
                        let co = exactla::coordinates_in(&full, &img).expect("basis of g");
                        co[sub.len() + j].clone()
                    })
                    .sum()
            })
            .collect(),
    };
    let mut m = HModule {
        actions: lambda
            .iter()
            .map(|c| SparseMatrix::from_dense(&[vec![c.clone()]]))
            .collect(),
        l_weights: vec![pair.restrict_to_l(&weight)],
    };
    if pair.k.kind == KKind::Sl2 {
        // L is the torus of SL(2); the weight above is its T-weight
        m.l_weights = vec![weight];
    }
    Ok(m)
}

/// Vectors from `ambient` extending `sub` to a basis of `sub + span(ambient)`.
pub fn extend_to_basis(sub: &[Vec<Q>], ambient: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut cur = sub.to_vec();
    let mut out = Vec::new();
    for v in ambient {
        let mut trial = cur.clone();
        trial.push(v.clone());
        if exactla::rank_of_vectors(&trial) == trial.len() {
            cur = trial;
            out.push(v.clone());
        }
    }
    out
}

/// A `(g, K)`-module restricted to a window of torus weights: a space per
/// weight and, for each basis element of `g`, blocks mapping the `μ`-space to
/// the `μ + wt(ξ)`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub window: Window,
    pub spaces: BTreeMap<Weight, usize>,
    pub actions: Vec<BTreeMap<Weight, SparseMatrix>>,
    pub parity_coords: Vec<usize>,
}

impl GradedModule {
    pub fn new(window: Window, g_dim: usize) -> Self {
        GradedModule {
            window,
            spaces: BTreeMap::new(),
            actions: vec![BTreeMap::new(); g_dim],
            parity_coords: Vec::new(),
        }
    }

    pub fn dim_at(&self, w: &Weight) -> usize {
        self.spaces.get(w).copied().unwrap_or(0)
    }

    /// Block of basis element `i` leaving weight `w`; zero if absent.
    pub fn block(&self, i: usize, w: &Weight, shift: &Weight) -> SparseMatrix {
        self.actions[i]
            .get(w)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim_at(&w.add(shift)), self.dim_at(w)))
    }

    /// Multiplicities of all weights inside the reporting window.
    pub fn character(&self) -> Character {
        let mut c = Character::torus().with_parity_coords(self.parity_coords.clone());
        for (w, d) in &self.spaces {
            if self.window.contains(w) {
                c.add(w.clone(), *d as i64);
            }
        }
        c
    }

    /// `act(ξ)act(η) - act(η)act(ξ) = act([ξ, η])` on every weight whose
    /// shifted targets stay inside the stored spaces. Returns the first
    /// failing `(i, j, weight)`.
    pub fn check_brackets(
        &self,
        g: &LieAlg,
        weights: &[Weight],
    ) -> std::result::Result<(), (usize, usize, Weight)> {
        let n = g.dim();
        for mu in self.spaces.keys() {
            for i in 0..n {
                for j in 0..n {
                    let (wi, wj) = (&weights[i], &weights[j]);
                    let target = mu.add(wi).add(wj);
                    let inside = [mu.add(wi), mu.add(wj), target.clone()]
                        .iter()
                        .all(|w| self.spaces.contains_key(w));
                    if !inside {
                        continue;
                    }
                    let ab = self
                        .block(i, &mu.add(wj), wi)
                        .mul(&self.block(j, mu, wj))
                        .expect("block shapes");
                    let ba = self
                        .block(j, &mu.add(wi), wj)
                        .mul(&self.block(i, mu, wi))
                        .expect("block shapes");
                    let lhs = ab.sub(&ba).expect("same shape");
                    let mut rhs = SparseMatrix::zeros(lhs.rows(), lhs.cols());
                    for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                        if !c.is_zero() {
                            rhs = rhs.add(&self.block(k, mu, &weights[k]).scale(c)).expect("shape");
                        }
                    }
                    if lhs != rhs {
                        return Err((i, j, mu.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Blocks only connect `μ` to `μ + wt(ξ)`.
    pub fn check_grading(&self, weights: &[Weight]) -> bool {
        self.actions.iter().enumerate().all(|(i, blocks)| {
            blocks.iter().all(|(mu, m)| {
                m.cols() == self.dim_at(mu) && m.rows() == self.dim_at(&mu.add(&weights[i]))
            })
        })
    }

    /// The `K`-finite dual: weights negated, blocks negated and transposed.
    pub fn dual_module(&self, weights: &[Weight]) -> GradedModule {
        let window = Window {
            bounds: self.window.bounds.iter().map(|(lo, hi)| (-hi, -lo)).collect(),
            margin: self.window.margin,
        };
        let mut out = GradedModule::new(window, self.actions.len());
        out.parity_coords = self.parity_coords.clone();
        for (w, d) in &self.spaces {
            out.spaces.insert(w.neg(), *d);
        }
        for (i, blocks) in self.actions.iter().enumerate() {
            for (mu, m) in blocks {
                // dual block leaves -(mu + wt) and lands on -mu
                let src = mu.add(&weights[i]).neg();
                out.actions[i].insert(src, m.transpose().scale(&-Q::one()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::liealg::Family;

    #[test]
    fn character_notation() {
        let c = Character::from_pairs(CharacterKind::TorusWeights, [(vec![-2], 1), (vec![0], 2)]);
        assert_eq!(c.to_string(), "-2 0×2");
        let k = Character::from_pairs(CharacterKind::Sl2KTypes, [(vec![3], 1)]);
        assert_eq!(k.to_string(), "V_3");
        assert_eq!(Character::torus().to_string(), "0");
    }

    #[test]
    fn one_dim_modules() {
        let a = PairData::new(Family::closed_orbit()).unwrap();
        // h basis is (h, f)
        let v = one_dim_module(&a, &[q(3), q(0)], &Weight(vec![3])).unwrap();
        assert_eq!(v.dim(), 1);
        assert_eq!(
            one_dim_module(&a, &[q(3), q(1)], &Weight(vec![3])),
            Err(Error::NonInvariantCharacter)
        );
        let triv = one_dim_module(&a, &[q(0), q(0)], &Weight(vec![0])).unwrap();
        assert_eq!(triv.scalar_character().unwrap(), vec![q(0), q(0)]);
        // K-type must integrate the l-action
        assert!(one_dim_module(&a, &[q(3), q(0)], &Weight(vec![1])).is_err());
    }

    #[test]
    fn top_powers() {
        let a = PairData::new(Family::closed_orbit()).unwrap();
        let t = lambda_top(&a, TopQuotient::GModH).unwrap();
        assert_eq!(t.l_weights, vec![Weight(vec![2])]);
        assert_eq!(t.scalar_character().unwrap(), vec![q(2), q(0)]);
        let kl = lambda_top(&a, TopQuotient::KModL).unwrap();
        assert_eq!(kl.l_weights, vec![Weight(vec![0])]);
        let c = PairData::new(Family::BorelWeilBott).unwrap();
        let kl = lambda_top(&c, TopQuotient::KModL).unwrap();
        assert_eq!(kl.l_weights, vec![Weight(vec![0])]);
        let b = PairData::new(Family::open_orbit()).unwrap();
        let t = lambda_top(&b, TopQuotient::GModH).unwrap();
        // h basis is (h - 2e, e + f); the trace is -2 on e + f and h + 2f
        assert_eq!(t.scalar_character().unwrap(), vec![q(2), q(-2)]);
    }

    #[test]
    fn dual_and_tensor() {
        let c = Character::from_pairs(CharacterKind::TorusWeights, [(vec![2], 1), (vec![4], 1)]);
        assert_eq!(
            c.negate_weights(),
            Character::from_pairs(CharacterKind::TorusWeights, [(vec![-2], 1), (vec![-4], 1)])
        );
        assert_eq!(c.negate_weights().negate_weights(), c);
        let z = Character::from_pairs(CharacterKind::TorusWeights, [(vec![0], 1)]);
        assert_eq!(z.shift(&Weight(vec![2])).get(&Weight(vec![2])), 1);
        assert_eq!(z.shift(&Weight(vec![0])), z);

        let a = PairData::new(Family::closed_orbit()).unwrap();
        let v = one_dim_module(&a, &[q(-3), q(0)], &Weight(vec![-3])).unwrap();
        let t = lambda_top(&a, TopQuotient::GModH).unwrap();
        let w = v.tensor_onedim(&t).unwrap();
        assert_eq!(w.l_weights, vec![Weight(vec![-1])]);
        assert_eq!(w.dual().dual(), w);
        // (V ⊗ t)* = V* ⊗ t*
        assert_eq!(w.dual(), v.dual().tensor_onedim(&t.dual()).unwrap());
        let triv = one_dim_module(&a, &[q(0), q(0)], &Weight(vec![0])).unwrap();
        assert_eq!(triv.dual(), triv);
    }

    #[test]
    fn peeling() {
        let c = sl2_irrep_weights(3).sum(&sl2_irrep_weights(1));
        let k = peel_sl2_types(&c).unwrap();
        assert_eq!(k, Character::from_pairs(CharacterKind::Sl2KTypes, [(vec![3], 1), (vec![1], 1)]));
        assert_eq!(ktypes_to_weights(&k), c);
        assert_eq!(k.dimension(), 6);
        let lopsided = Character::from_pairs(CharacterKind::TorusWeights, [(vec![2], 1)]);
        assert!(peel_sl2_types(&lopsided).is_err());
    }

    #[test]
    fn json_entries() {
        let c = Character::from_pairs(CharacterKind::TorusWeights, [(vec![3], 1), (vec![1], 2)])
            .with_parity_coords(vec![0]);
        let j = c.to_json();
        assert_eq!(j[0]["weight"], serde_json::json!([1]));
        assert_eq!(j[0]["multiplicity"], 2);
        assert_eq!(j[0]["parity"], serde_json::json!([1]));
        let back = Character::from_json(CharacterKind::TorusWeights, &j).unwrap();
        assert_eq!(back.first_difference(&c), None);
    }

    #[test]
    fn windows() {
        let w = Window::cube(2, -1, 1).unwrap();
        assert_eq!(w.weights().len(), 9);
        assert!(w.internal().contains(&Weight(vec![9, -9])));
        assert!(Window::new(vec![(1, 0)]).is_err());
    }
}
