//! The Hecke algebras `R(K)` and `R(g, K)`, and a generators-and-relations
//! computation of the degree-0 induced module.
//!
//! Distributions on `K` are represented by their images in `⊕_τ End(V_τ)`.
//! For a torus, `e_n` is the distribution whose action on any module is the
//! projection onto `K`-weight `-n`; in particular `e_n ⊗ ξ = -n(ξ) e_n` for
//! `ξ` in the Lie algebra of `K`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{self, q, Q, SparseMatrix};
use crate::gkmod::{extend_to_basis, Character, CharacterKind, HModule, Weight, Window};
use crate::liealg::{KKind, LCoord, LieAlg, LieElt, PairData};
use crate::pbw::{monomials_up_to, Enveloping, Monomial, UElt};

/// Largest PBW degree the truncated computations will use.
pub const MAX_DEGREE: u32 = 64;

/// The irreducible `SL(2)`-module of highest weight `n` in the basis
/// `v_0..v_n`, `v_j` of weight `n - 2j`, with `f v_j = v_{j+1}` and
/// `e v_j = j(n - j + 1) v_{j-1}`. Returns the matrices of `(e, h, f)`.
pub fn sl2_irrep(n: i64) -> [SparseMatrix; 3] {
    let d = (n + 1) as usize;
    let mut e = Vec::new();
    let mut h = Vec::new();
    let mut f = Vec::new();
    for j in 0..d {
        let ji = j as i64;
        h.push((j, j, q(n - 2 * ji)));
        if j + 1 < d {
            f.push((j + 1, j, q(1)));
        }
        if j >= 1 {
            e.push((j - 1, j, q(ji * (n - ji + 1))));
        }
    }
    [e, h, f].map(|t| SparseMatrix::from_triplets(d, d, t).expect("in range"))
}

/// `π_n(x)` for `x = (a, b, c)` in the basis `(e, h, f)`.
pub fn sl2_irrep_elt(n: i64, x: &[Q]) -> SparseMatrix {
    let mats = sl2_irrep(n);
    let d = (n + 1) as usize;
    x.iter()
        .zip(&mats)
        .fold(SparseMatrix::zeros(d, d), |acc, (c, m)| acc.add(&m.scale(c)).expect("square"))
}

/// Element of `R(K)`: one matrix block per `K`-type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RKElt {
    pub kind: CharacterKind,
    blocks: BTreeMap<Weight, SparseMatrix>,
}

impl RKElt {
    pub fn zero(kind: CharacterKind) -> Self {
        RKElt {
            kind,
            blocks: BTreeMap::new(),
        }
    }

    /// Torus idempotent `e_n` scaled by `c`.
    pub fn torus_idempotent(n: Weight, c: Q) -> Self {
        let mut r = Self::zero(CharacterKind::TorusWeights);
        r.set_block(n, SparseMatrix::from_dense(&[vec![c]]));
        r
    }

    /// A single block at the `SL(2)` `K`-type `n`.
    pub fn sl2_block(n: i64, m: SparseMatrix) -> Result<Self> {
        let d = (n + 1) as usize;
        if n < 0 || m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch(format!("block for K-type {n} must be {d}x{d}")));
        }
        let mut r = Self::zero(CharacterKind::Sl2KTypes);
        r.set_block(Weight(vec![n]), m);
        Ok(r)
    }

    pub fn set_block(&mut self, tau: Weight, m: SparseMatrix) {
        if m.is_zero() {
            self.blocks.remove(&tau);
        } else {
            self.blocks.insert(tau, m);
        }
    }

    pub fn block(&self, tau: &Weight) -> Option<&SparseMatrix> {
        self.blocks.get(tau)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Weight, &SparseMatrix)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn add(&self, o: &RKElt) -> RKElt {
        let mut r = self.clone();
        for (t, m) in o.blocks() {
            let sum = match r.blocks.get(t) {
                Some(a) => a.add(m).expect("same K-type"),
                None => m.clone(),
            };
            r.set_block(t.clone(), sum);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> RKElt {
        let mut r = Self::zero(self.kind);
        for (t, m) in self.blocks() {
            r.set_block(t.clone(), m.scale(c));
        }
        r
    }
}

/// Convolution: blockwise matrix product.
pub fn rk_mul(s: &RKElt, t: &RKElt) -> RKElt {
    let mut r = RKElt::zero(s.kind);
    for (tau, a) in s.blocks() {
        if let Some(b) = t.block(tau) {
            r.set_block(tau.clone(), a.mul(b).expect("same K-type"));
        }
    }
    r
}

/// `R(g, K)` for a pair, with the enveloping algebra written in a basis that
/// starts with `Lie(K)` so that `U(k)`-factors can be absorbed to the left.
#[derive(Debug)]
pub struct HeckeAlgebra {
    kind: KKind,
    /// Basis of `g` as `Lie(K) ++ complement`, in original coordinates.
    basis: Vec<LieElt>,
    k_dim: usize,
    env: Enveloping,
    weights: Vec<Weight>,
}

/// Element of `R(g, K)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RgKElt {
    /// `Σ c · e_n ⊗ m` with `m` a PBW monomial in the complement of `Lie(K)`.
    Torus(BTreeMap<(Weight, Monomial), Q>),
    /// `K = G`: everything is absorbed into `R(K)`.
    Sl2(RKElt),
}

impl RgKElt {
    pub fn is_zero(&self) -> bool {
        match self {
            RgKElt::Torus(t) => t.is_empty(),
            RgKElt::Sl2(r) => r.is_zero(),
        }
    }

    pub fn add(&self, o: &RgKElt) -> Result<RgKElt> {
        match (self, o) {
            (RgKElt::Torus(a), RgKElt::Torus(b)) => {
                let mut r = a.clone();
                for (k, c) in b {
                    add_into(&mut r, k.clone(), c.clone());
                }
                Ok(RgKElt::Torus(r))
            }
            (RgKElt::Sl2(a), RgKElt::Sl2(b)) => Ok(RgKElt::Sl2(a.add(b))),
            _ => Err(Error::Invalid("mixed Hecke algebra elements".into())),
        }
    }

    pub fn scale(&self, c: &Q) -> RgKElt {
        match self {
            RgKElt::Torus(t) => {
                let mut r = BTreeMap::new();
                for (k, v) in t {
                    add_into(&mut r, k.clone(), v * c);
                }
                RgKElt::Torus(r)
            }
            RgKElt::Sl2(r) => RgKElt::Sl2(r.scale(c)),
        }
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

/// How to pick the basis `ξ_i` of the span of `Ad(K)ξ` in the product formula.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SpanBasis {
    /// The weight components of `ξ`.
    #[default]
    WeightComponents,
    /// `ξ_i = Σ_j mix[i][j] · (weight component j)`; must be invertible.
    Mixed(Vec<Vec<Q>>),
}

impl HeckeAlgebra {
    pub fn new(pair: &PairData) -> Result<Self> {
        let g = &pair.g;
        let k = &pair.k.embedding;
        let ambient: Vec<LieElt> = (0..g.dim()).map(|i| g.basis(i)).collect();
        let mut basis = k.clone();
        basis.extend(extend_to_basis(k, &ambient));
        // reuse the ambient label when a basis vector is an ambient basis vector
        let labels = basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let nz: Vec<usize> = (0..v.len()).filter(|j| !v[*j].is_zero()).collect();
                match nz.as_slice() {
                    [j] if v[*j].is_one() => g.label(*j).to_string(),
                    _ => format!("x{i}"),
                }
            })
            .collect();
        let gp = g.change_basis(&basis, labels)?;
        let weights = basis
            .iter()
            .map(|v| pair.weight_of(v).ok_or(Error::Invalid("basis is not K-graded".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(HeckeAlgebra {
            kind: pair.k.kind.clone(),
            basis,
            k_dim: k.len(),
            env: Enveloping::new(gp),
            weights,
        })
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.kind, KKind::Torus { .. })
    }

    fn to_local(&self, x: &[Q]) -> Result<UElt> {
        let c = exactla::coordinates_in(&self.basis, x)
            .ok_or_else(|| Error::Invalid("element outside g".into()))?;
        Ok(self.env.lie_elt(&c))
    }

    fn word(&self, xs: &[LieElt]) -> Result<UElt> {
        let mut u = self.env.one();
        for x in xs {
            u = self.env.mul(&u, &self.to_local(x)?);
        }
        Ok(u)
    }

    fn monomial_weight(&self, m: &Monomial) -> Weight {
        let r = self.weights[0].rank();
        m.0.iter()
            .zip(&self.weights)
            .fold(Weight::zero(r), |acc, (a, w)| acc.add(&w.scale(i64::from(*a))))
    }

    /// `e_n ⊗ u` in canonical form: `U(k)`-letters (first in the PBW order)
    /// become the scalar `(-n)(κ)`.
    fn canonical(&self, n: &Weight, u: &UElt) -> BTreeMap<(Weight, Monomial), Q> {
        let mut out = BTreeMap::new();
        for (m, c) in u.terms() {
            let mut scalar = c.clone();
            let mut rest = m.clone();
            for r in 0..self.k_dim {
                let a = rest.0[r];
                scalar *= exactla::qpow(&q(-n.0[r]), i64::from(a));
                rest.0[r] = 0;
            }
            add_into(&mut out, (n.clone(), rest), scalar);
        }
        out
    }

    /// `c · e_n ⊗ x_1 x_2 ⋯` for a torus, or `π_n(x_1 x_2 ⋯)` in the
    /// `K`-type-`n` block for `K = SL(2)`.
    pub fn pure(&self, n: Weight, c: Q, xs: &[LieElt]) -> Result<RgKElt> {
        match self.kind {
            KKind::Torus { .. } => {
                let u = self.word(xs)?;
                let mut r = self.canonical(&n, &u);
                r.values_mut().for_each(|v| *v *= &c);
                r.retain(|_, v| !v.is_zero());
                Ok(RgKElt::Torus(r))
            }
            KKind::Sl2 => {
                let d = (n.0[0] + 1) as usize;
                let mut m = SparseMatrix::identity(d).scale(&c);
                for x in xs {
                    let coords = exactla::coordinates_in(&self.basis, x)
                        .ok_or_else(|| Error::Invalid("element outside g".into()))?;
                    m = m.mul(&sl2_irrep_elt(n.0[0], &coords))?;
                }
                Ok(RgKElt::Sl2(RKElt::sl2_block(n.0[0], m)?))
            }
        }
    }

    /// `Σ_{τ ∈ window} 1_τ ⊗ 1`.
    pub fn approx_identity(&self, window: &[Weight]) -> Result<RgKElt> {
        let mut z = match self.kind {
            KKind::Torus { .. } => RgKElt::Torus(BTreeMap::new()),
            KKind::Sl2 => RgKElt::Sl2(RKElt::zero(CharacterKind::Sl2KTypes)),
        };
        for tau in window {
            z = z.add(&self.pure(tau.clone(), Q::one(), &[])?)?;
        }
        Ok(z)
    }

    pub fn mul(&self, a: &RgKElt, b: &RgKElt) -> Result<RgKElt> {
        self.mul_with(a, b, &SpanBasis::WeightComponents)
    }

    /// The product `(S ⊗ ξ)(T ⊗ η) = Σ_i S * (⟨ξ_i*, Ad(·)⁻¹ξ⟩ T) ⊗ ξ_i η`
    /// with the basis `ξ_i` of the span of `Ad(K)ξ` chosen by `basis`.
    pub fn mul_with(&self, a: &RgKElt, b: &RgKElt, basis: &SpanBasis) -> Result<RgKElt> {
        match (a, b) {
            (RgKElt::Sl2(s), RgKElt::Sl2(t)) => Ok(RgKElt::Sl2(rk_mul(s, t))),
            (RgKElt::Torus(x), RgKElt::Torus(y)) => {
                let mut out = BTreeMap::new();
                for ((n, m), c) in x {
                    let xi = UElt::monomial(m.clone(), c.clone());
                    for ((n2, m2), c2) in y {
                        let eta = UElt::monomial(m2.clone(), c2.clone());
                        for (k, v) in self.mul_general(n, &xi, n2, &eta, basis)? {
                            add_into(&mut out, k, v);
                        }
                    }
                }
                Ok(RgKElt::Torus(out))
            }
            _ => Err(Error::UnsupportedK("mixed Hecke algebra elements".into())),
        }
    }

    /// `(e_n ⊗ ξ)(e_{n2} ⊗ η)` for arbitrary `ξ, η ∈ U(g)` (local PBW form).
    pub fn mul_general(
        &self,
        n: &Weight,
        xi: &UElt,
        n2: &Weight,
        eta: &UElt,
        basis: &SpanBasis,
    ) -> Result<BTreeMap<(Weight, Monomial), Q>> {
        if !self.is_torus() {
            return Err(Error::UnsupportedK("general products are implemented for tori".into()));
        }
        // weight components of ξ
        let mut comps: BTreeMap<Weight, UElt> = BTreeMap::new();
        for (m, c) in xi.terms() {
            let w = self.monomial_weight(m);
            let e = comps.entry(w).or_default();
            *e = e.add(&UElt::monomial(m.clone(), c.clone()));
        }
        let comp_list: Vec<(Weight, UElt)> = comps.into_iter().collect();
        let k = comp_list.len();
        let mix = match basis {
            SpanBasis::WeightComponents => (0..k)
                .map(|i| (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect(),
            SpanBasis::Mixed(m) if m.len() == k && m.iter().all(|r| r.len() == k) => m.clone(),
            SpanBasis::Mixed(_) => {
                return Err(Error::DimensionMismatch("mixing matrix size".into()));
            }
        };
        let inv = exactla::inverse(&mix).ok_or(Error::LinearlyDependent)?;
        // ξ_i = Σ_j mix[i][j] comp_j, so comp_w = Σ_i inv[w][i] ξ_i, and
        // ⟨ξ_i*, Ad(k)⁻¹ξ⟩ = Σ_w k^{-w} inv[w][i].
        let span: Vec<UElt> = mix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&comp_list)
                    .fold(UElt::zero(), |acc, (c, (_, u))| acc.add(&u.scale(c)))
            })
            .collect();
        let mut out = BTreeMap::new();
        for (i, xi_i) in span.iter().enumerate() {
            for (wi, (w, _)) in comp_list.iter().enumerate() {
                let coeff = &inv[wi][i];
                if coeff.is_zero() {
                    continue;
                }
                // k^{-w} e_{n2} = e_{n2 - w}; S * that = δ_{n, n2 - w} e_n
                if *n != n2.sub(w) {
                    continue;
                }
                let prod = self.env.mul(xi_i, eta).scale(coeff);
                for (key, v) in self.canonical(n, &prod) {
                    add_into(&mut out, key, v);
                }
            }
        }
        Ok(out)
    }

    /// `c·e_n⊗m` notation with the basis labels of `g`.
    pub fn format(&self, a: &RgKElt) -> String {
        let labels = self.env.lie().labels();
        let mono = |m: &Monomial| -> String {
            let parts: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { labels[i].clone() } else { format!("{}^{e}", labels[i]) })
                .collect();
            if parts.is_empty() { "1".into() } else { parts.join("") }
        };
        let terms: Vec<String> = match a {
            RgKElt::Torus(map) => map
                .iter()
                .map(|((n, m), c)| {
                    let n = n.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    format!("{c}·e_{n}⊗{}", mono(m))
                })
                .collect(),
            RgKElt::Sl2(r) => r.blocks().map(|(t, m)| format!("V_{}:{m:?}", t.0[0])).collect(),
        };
        if terms.is_empty() { "0".into() } else { terms.join(" + ") }
    }

    /// Local PBW form of a word of `g` elements, for use with [`Self::mul_general`].
    pub fn local_word(&self, xs: &[LieElt]) -> Result<UElt> {
        self.word(xs)
    }

    /// Left and right `K`-types touched by an element.
    pub fn support(&self, a: &RgKElt) -> Vec<Weight> {
        match a {
            RgKElt::Torus(t) => t
                .keys()
                .flat_map(|(n, m)| [n.clone(), n.add(&self.monomial_weight(m))])
                .collect(),
            RgKElt::Sl2(r) => r.blocks().map(|(t, _)| t.clone()).collect(),
        }
    }
}

/// `U(g) ⊗_{U(h)} W` with `U(g)` in a PBW basis that puts a complement
/// `c` of `h` first: elements are combinations of `(m, j)` with `m` a
/// monomial in `c` and `j` a basis index of `W`.
#[derive(Debug)]
pub struct InducedModule<'a> {
    basis: Vec<LieElt>,
    c_dim: usize,
    env: Enveloping,
    w: &'a HModule,
}

pub type InducedVec = BTreeMap<(Monomial, usize), Q>;

impl<'a> InducedModule<'a> {
    pub fn new(pair: &PairData, w: &'a HModule) -> Result<Self> {
        let g = &pair.g;
        let hb = pair.h.basis().to_vec();
        let ambient: Vec<LieElt> = (0..g.dim()).map(|i| g.basis(i)).collect();
        let mut basis = extend_to_basis(&hb, &ambient);
        let c_dim = basis.len();
        basis.extend(hb);
        let labels = (0..basis.len()).map(|i| format!("y{i}")).collect();
        let gp = g.change_basis(&basis, labels)?;
        Ok(InducedModule {
            basis,
            c_dim,
            env: Enveloping::new(gp),
            w,
        })
    }

    pub fn c_dim(&self) -> usize {
        self.c_dim
    }

    /// Complement vectors in original coordinates.
    pub fn complement(&self) -> &[LieElt] {
        &self.basis[..self.c_dim]
    }

    fn local(&self, x: &[Q]) -> Result<UElt> {
        let c = exactla::coordinates_in(&self.basis, x)
            .ok_or_else(|| Error::Invalid("element outside g".into()))?;
        Ok(self.env.lie_elt(&c))
    }

    /// `x · (m ⊗ w_j)`.
    pub fn act(&self, x: &[Q], m: &Monomial, j: usize) -> Result<InducedVec> {
        let mut full = Monomial::one(self.basis.len());
        full.0[..self.c_dim].copy_from_slice(&m.0);
        let u = self.env.mul(&self.local(x)?, &UElt::monomial(full, Q::one()));
        let mut out = InducedVec::new();
        for (mm, c) in u.terms() {
            let cpart = Monomial(mm.0[..self.c_dim].to_vec());
            // h-letters act on w_j, rightmost first
            let mut vec = vec![Q::zero(); self.w.dim()];
            vec[j] = Q::one();
            let letters: Vec<usize> = Monomial(mm.0[self.c_dim..].to_vec()).letters();
            for i in letters.into_iter().rev() {
                vec = self.w.actions[i].apply(&vec);
            }
            for (jj, v) in vec.into_iter().enumerate() {
                add_into(&mut out, (cpart.clone(), jj), v * c);
            }
        }
        Ok(out)
    }
}

/// Degree-0 induction `R(g, K) ⊗_{R(h, L)} X` computed from
/// `U(g) ⊗_{U(h)} X` by generators and relations: for a torus, the
/// coinvariants of `Lie(K)` at each weight plus the sign condition of the
/// finite part of `L`; for `K = SL(2)`, the `g`-coinvariants of
/// `V_n^* ⊗ U(g) ⊗_{U(h)} X`.
pub fn p_deg0_oracle(pair: &PairData, x: &HModule, window: &Window) -> Result<Character> {
    if window.margin == 0 {
        return Err(Error::WindowTooSmall("margin must be at least 1".into()));
    }
    match pair.k.kind {
        KKind::Torus { .. } => oracle_torus(pair, x, window),
        KKind::Sl2 => oracle_sl2(pair, x, window),
    }
}

fn oracle_torus(pair: &PairData, x: &HModule, window: &Window) -> Result<Character> {
    let mut out = Character::torus().with_parity_coords(pair.parity_coords());
    if x.dim() == 0 {
        return Ok(out);
    }
    let ind = InducedModule::new(pair, x)?;
    let cw: Vec<Weight> = ind
        .complement()
        .iter()
        .map(|v| pair.weight_of(v).ok_or(Error::Invalid("complement not graded".into())))
        .collect::<Result<_>>()?;
    for nu in window.weights() {
        // sign condition on the finite part of L
        let parity_ok = |j: usize| {
            pair.l.iter().enumerate().all(|(r, lc)| {
                *lc == LCoord::Full || (nu.0[r] - x.l_weights[j].0[r]).rem_euclid(2) == 0
            })
        };
        let js: Vec<usize> = (0..x.dim()).filter(|j| parity_ok(*j)).collect();
        if js.is_empty() {
            continue;
        }
        let reach: i64 = nu
            .0
            .iter()
            .zip(&x.l_weights[0].0)
            .map(|(a, b)| (a - b).abs() / 2 + 1)
            .sum();
        let n = u32::try_from(reach).unwrap_or(u32::MAX) + 2 * window.margin;
        if n > MAX_DEGREE {
            return Err(Error::WindowTooSmall(format!("degree {n} needed at {nu:?}")));
        }
        let mons: Vec<Monomial> = monomials_up_to(ind.c_dim(), n + 1)
            .into_iter()
            .filter(|m| {
                // only monomials that can reach ν on the Full coordinates
                let w = m
                    .0
                    .iter()
                    .zip(&cw)
                    .fold(Weight::zero(nu.rank()), |acc, (a, w)| acc.add(&w.scale(i64::from(*a))));
                js.iter().any(|j| {
                    pair.l.iter().enumerate().all(|(r, lc)| {
                        *lc == LCoord::Parity || w.0[r] + x.l_weights[*j].0[r] == nu.0[r]
                    })
                })
            })
            .collect();
        let mut index: BTreeMap<(Monomial, usize), usize> = BTreeMap::new();
        for m in &mons {
            for j in &js {
                let k = index.len();
                index.insert((m.clone(), *j), k);
            }
        }
        let dim = index.len();
        let mut rel: Vec<Vec<Q>> = Vec::new();
        for (r, kr) in pair.k.embedding.iter().enumerate() {
            for m in mons.iter().filter(|m| m.degree() <= n) {
                for j in &js {
                    let mut v = vec![Q::zero(); dim];
                    // k preserves weight, so every image term is indexed
                    for (key, c) in ind.act(kr, m, *j)? {
                        if let Some(i) = index.get(&key) {
                            v[*i] += c;
                        }
                    }
                    if let Some(i) = index.get(&(m.clone(), *j)) {
                        v[*i] -= q(nu.0[r]);
                    }
                    rel.push(v);
                }
            }
        }
        let low: Vec<Vec<Q>> = index
            .iter()
            .filter(|((m, _), _)| m.degree() <= n)
            .map(|(_, i)| {
                let mut v = vec![Q::zero(); dim];
                v[*i] = Q::one();
                v
            })
            .collect();
        let r_rel = exactla::rank_of_vectors(&rel);
        let mut both = rel;
        both.extend(low);
        let d = exactla::rank_of_vectors(&both) - r_rel;
        out.add(nu, d as i64);
    }
    Ok(out)
}

fn oracle_sl2(pair: &PairData, x: &HModule, window: &Window) -> Result<Character> {
    let mut out = Character::ktypes();
    if x.dim() == 0 {
        return Ok(out);
    }
    let ind = InducedModule::new(pair, x)?;
    let cw: Vec<i64> = ind
        .complement()
        .iter()
        .map(|v| pair.weight_of(v).map(|w| w.0[0]).ok_or(Error::Invalid("complement not graded".into())))
        .collect::<Result<_>>()?;
    if cw.iter().any(|w| *w <= 0) {
        return Err(Error::UnsupportedK("complement must have positive weights".into()));
    }
    let (lo, hi) = window.bounds[0];
    let wmin = x.l_weights.iter().map(|w| w.0[0]).min().unwrap_or(0);
    for n in lo.max(0)..=hi {
        // Z weights needed lie in [-n-2, n+2]; weights grow with degree
        let top = u32::try_from(((n + 2 - wmin).max(0)) / 2 + 1).unwrap_or(u32::MAX);
        if top > MAX_DEGREE {
            return Err(Error::WindowTooSmall(format!("degree {top} needed at K-type {n}")));
        }
        let zw = |m: &Monomial, j: usize| -> i64 {
            m.0.iter().zip(&cw).map(|(a, w)| i64::from(*a) * w).sum::<i64>() + x.l_weights[j].0[0]
        };
        // basis of (V_n^* ⊗ Z) at T-weights 0 and ±2: (j, m, wj), φ = v_j^* has weight -(n - 2j)
        let mut cells: BTreeMap<i64, Vec<(usize, Monomial, usize)>> = BTreeMap::new();
        for m in monomials_up_to(ind.c_dim(), top) {
            for wj in 0..x.dim() {
                for j in 0..=(n as usize) {
                    let t = -(n - 2 * j as i64) + zw(&m, wj);
                    if (-2..=2).contains(&t) {
                        cells.entry(t).or_default().push((j, m.clone(), wj));
                    }
                }
            }
        }
        let zero = cells.get(&0).cloned().unwrap_or_default();
        let idx: BTreeMap<(usize, Monomial, usize), usize> =
            zero.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let pi = sl2_irrep(n);
        let g = &pair.g;
        let mut images: Vec<Vec<Q>> = Vec::new();
        for (src, gi) in [(-2i64, 0usize), (2, 2)] {
            let xg = g.basis(gi);
            for (j, m, wj) in cells.get(&src).cloned().unwrap_or_default() {
                let mut v = vec![Q::zero(); zero.len()];
                // ξ·φ = -φ∘π(ξ): row j of π(ξ)
                for (r, col, c) in pi[gi].entries() {
                    if r == j {
                        if let Some(i) = idx.get(&(col, m.clone(), wj)) {
                            v[*i] -= c;
                        }
                    }
                }
                for ((mm, jj), c) in ind.act(&xg, &m, wj)? {
                    if let Some(i) = idx.get(&(j, mm, jj)) {
                        v[*i] += c;
                    }
                }
                images.push(v);
            }
        }
        let d = zero.len() - exactla::rank_of_vectors(&images);
        out.add(Weight(vec![n]), d as i64);
    }
    Ok(out)
}

/// Checks that every element of `g` acts compatibly on the induced module:
/// `[x, y]·v = x·(y·v) - y·(x·v)` on a sample of basis vectors.
pub fn induced_bracket_check(pair: &PairData, x: &HModule, max_degree: u32) -> Result<bool> {
    let ind = InducedModule::new(pair, x)?;
    let g: &LieAlg = &pair.g;
    let apply = |e: &[Q], v: &InducedVec| -> Result<InducedVec> {
        let mut out = InducedVec::new();
        for ((m, j), c) in v {
            for (k, d) in ind.act(e, m, *j)? {
                add_into(&mut out, k, d * c);
            }
        }
        Ok(out)
    };
    for m in monomials_up_to(ind.c_dim(), max_degree) {
        for j in 0..x.dim() {
            let v: InducedVec = [((m.clone(), j), Q::one())].into_iter().collect();
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let (xa, xb) = (g.basis(a), g.basis(b));
                    let lhs = apply(&g.bracket(&xa, &xb), &v)?;
                    let ab = apply(&xa, &apply(&xb, &v)?)?;
                    let ba = apply(&xb, &apply(&xa, &v)?)?;
                    let mut rhs = ab;
                    for (k, c) in ba {
                        add_into(&mut rhs, k, -c);
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkmod::{lambda_top, one_dim_module, TopQuotient};
    use crate::liealg::{Family, FactorKind};
    use crate::locp1;
    use proptest::prelude::*;

    fn e_n(n: i64) -> Weight {
        Weight(vec![n])
    }

    #[test]
    fn rk_products() {
        let a = RKElt::torus_idempotent(e_n(0), q(1));
        let b = RKElt::torus_idempotent(e_n(1), q(1));
        assert!(rk_mul(&a, &b).is_zero());
        assert_eq!(rk_mul(&a, &a), a);
        let s = RKElt::torus_idempotent(e_n(0), q(2)).add(&b);
        assert_eq!(rk_mul(&s, &b), b);
        let m1 = SparseMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let m2 = SparseMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let x = RKElt::sl2_block(1, m1.clone()).unwrap();
        let y = RKElt::sl2_block(1, m2.clone()).unwrap();
        assert_eq!(rk_mul(&x, &y), RKElt::sl2_block(1, m1.mul(&m2).unwrap()).unwrap());
        assert!(RKElt::sl2_block(1, SparseMatrix::identity(3)).is_err());
    }

    fn closed() -> (PairData, HeckeAlgebra) {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let h = HeckeAlgebra::new(&p).unwrap();
        (p, h)
    }

    #[test]
    fn rgk_products() {
        let (p, r) = closed();
        let e = p.g.basis(0);
        let a = r.pure(e_n(0), q(1), std::slice::from_ref(&e)).unwrap();
        let b = r.pure(e_n(2), q(1), &[]).unwrap();
        assert_eq!(r.mul(&a, &b).unwrap(), a);
        let c = r.pure(e_n(1), q(1), &[]).unwrap();
        assert!(r.mul(&a, &c).unwrap().is_zero());
        for n in -3..=3 {
            let u = r.pure(e_n(n), q(1), &[]).unwrap();
            assert_eq!(r.mul(&u, &u).unwrap(), u);
        }
        // e_n ⊗ h = -n e_n
        let h = p.g.basis(1);
        assert_eq!(
            r.pure(e_n(3), q(1), &[h]).unwrap(),
            r.pure(e_n(3), q(-3), &[]).unwrap()
        );
    }

    #[test]
    fn approximate_identity() {
        let (p, r) = closed();
        let win: Vec<Weight> = (-1..=1).map(e_n).collect();
        let z = r.approx_identity(&win).unwrap();
        assert_eq!(r.mul(&z, &z).unwrap(), z);
        let (e, f) = (p.g.basis(0), p.g.basis(2));
        // e·f has weight 0, so it stays inside the window on both sides
        let x = r.pure(e_n(0), q(1), &[e, f]).unwrap();
        assert_eq!(r.mul(&z, &x).unwrap(), x);
        assert_eq!(r.mul(&x, &z).unwrap(), x);
        let far = r.pure(e_n(5), q(1), &[]).unwrap();
        let z01 = r.approx_identity(&[e_n(0), e_n(1)]).unwrap();
        assert_ne!(r.mul(&z01, &far).unwrap(), far);
    }

    #[test]
    fn sl2_hecke_absorbs() {
        let p = PairData::new(Family::BorelWeilBott).unwrap();
        let r = HeckeAlgebra::new(&p).unwrap();
        let e = p.g.basis(0);
        let f = p.g.basis(2);
        let a = r.pure(e_n(2), q(1), std::slice::from_ref(&e)).unwrap();
        let b = r.pure(e_n(2), q(1), std::slice::from_ref(&f)).unwrap();
        let ab = r.mul(&a, &b).unwrap();
        assert_eq!(ab, r.pure(e_n(2), q(1), &[e, f]).unwrap());
        let z = r.approx_identity(&[e_n(0), e_n(2)]).unwrap();
        assert_eq!(r.mul(&z, &ab).unwrap(), ab);
    }

    #[test]
    fn irreps_are_representations() {
        let g = crate::liealg::sl2();
        for n in 0..5 {
            let pi = sl2_irrep(n);
            for i in 0..3 {
                for j in 0..3 {
                    let lhs = pi[i].mul(&pi[j]).unwrap().sub(&pi[j].mul(&pi[i]).unwrap()).unwrap();
                    assert_eq!(lhs, sl2_irrep_elt(n, g.bracket_basis(i, j)));
                }
            }
        }
    }

    fn w_for(p: &PairData, lambda: i64, parity: u8) -> HModule {
        let vals = locp1::isotropy_values(p, &[lambda]).unwrap();
        let wt = locp1::isotropy_weight(p, &[lambda], &[parity]).unwrap();
        let v = one_dim_module(p, &vals, &wt).unwrap();
        v.tensor_onedim(&lambda_top(p, TopQuotient::GModH).unwrap()).unwrap()
    }

    #[test]
    fn oracle_closed_orbit() {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let w = Window::new(vec![(-8, 8)]).unwrap();
        for mu in -4..=4 {
            let vals = locp1::isotropy_values(&p, &[mu]).unwrap();
            let v = one_dim_module(&p, &vals, &Weight(vec![mu])).unwrap();
            let c = p_deg0_oracle(&p, &v, &w).unwrap();
            for nu in -8..=8 {
                let expect = i64::from(nu >= mu && (nu - mu) % 2 == 0);
                assert_eq!(c.get(&e_n(nu)), expect, "μ={mu} ν={nu}");
            }
        }
        let zero = HModule {
            actions: vec![SparseMatrix::zeros(0, 0); 2],
            l_weights: vec![],
        };
        assert!(p_deg0_oracle(&p, &zero, &w).unwrap().is_zero());
    }

    #[test]
    fn oracle_open_orbit() {
        let p = PairData::new(Family::open_orbit()).unwrap();
        let w = Window::new(vec![(-6, 6)]).unwrap();
        for l in -2..=2 {
            for par in 0..2u8 {
                let x = w_for(&p, l, par);
                let c = p_deg0_oracle(&p, &x, &w).unwrap();
                for nu in -6..=6 {
                    let expect = i64::from((nu - i64::from(par)).rem_euclid(2) == 0);
                    assert_eq!(c.get(&e_n(nu)), expect, "λ₀={l} p={par} ν={nu}");
                }
            }
        }
    }

    #[test]
    fn oracle_borel_weil_bott() {
        let p = PairData::new(Family::BorelWeilBott).unwrap();
        let w = Window::new(vec![(0, 8)]).unwrap();
        for l in -6..=4 {
            let x = w_for(&p, l, 0);
            let c = p_deg0_oracle(&p, &x, &w).unwrap();
            let mu = l + 2;
            let mut expect = Character::ktypes();
            if mu <= 0 && -mu <= 8 {
                expect.add(e_n(-mu), 1);
            }
            assert_eq!(c, expect, "λ₀={l}");
        }
    }

    #[test]
    fn induced_module_is_a_module() {
        for fam in [Family::closed_orbit(), Family::open_orbit(), Family::BorelWeilBott] {
            let p = PairData::new(fam).unwrap();
            let x = w_for(&p, 1, 1);
            assert!(induced_bracket_check(&p, &x, 2).unwrap());
        }
    }

    #[test]
    fn margin_zero_is_rejected() {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let w = Window::with_margin(vec![(0, 2)], 0).unwrap();
        let x = w_for(&p, 0, 0);
        assert!(matches!(p_deg0_oracle(&p, &x, &w), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn product_pair_hecke() {
        let p = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::OpenOne])).unwrap();
        let r = HeckeAlgebra::new(&p).unwrap();
        let z = r.approx_identity(&[Weight(vec![0, 0])]).unwrap();
        assert_eq!(r.mul(&z, &z).unwrap(), z);
    }

    fn torus_elt(r: &HeckeAlgebra, p: &PairData, spec: &[(i64, Vec<usize>, i64)]) -> RgKElt {
        let mut acc = RgKElt::Torus(BTreeMap::new());
        for (n, word, c) in spec {
            let xs: Vec<LieElt> = word.iter().map(|i| p.g.basis(*i)).collect();
            acc = acc.add(&r.pure(e_n(*n), q(*c), &xs).unwrap()).unwrap();
        }
        acc
    }

    fn spec() -> impl Strategy<Value = Vec<(i64, Vec<usize>, i64)>> {
        prop::collection::vec((-2i64..3, prop::collection::vec(0usize..3, 0..3), -2i64..3), 1..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn rgk_associative(a in spec(), b in spec(), c in spec()) {
            let (p, r) = closed();
            let (a, b, c) = (torus_elt(&r, &p, &a), torus_elt(&r, &p, &b), torus_elt(&r, &p, &c));
            let left = r.mul(&r.mul(&a, &b).unwrap(), &c).unwrap();
            let right = r.mul(&a, &r.mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn product_is_basis_independent(
            n in -2i64..3,
            n2 in -2i64..5,
            a in 1i64..4, b in -3i64..4, c in -3i64..4,
            word in prop::collection::vec(0usize..3, 0..2),
        ) {
            let (p, r) = closed();
            // ξ = a·e + b·f + c·h spans up to three weight components
            let xi = r.local_word(&[p.g.basis(0)]).unwrap().scale(&q(a))
                .add(&r.local_word(&[p.g.basis(2)]).unwrap().scale(&q(b)))
                .add(&r.local_word(&[p.g.basis(1)]).unwrap().scale(&q(c)));
            let xs: Vec<LieElt> = word.iter().map(|i| p.g.basis(*i)).collect();
            let eta = r.local_word(&xs).unwrap();
            let k = [a, b, c].iter().filter(|x| **x != 0).count();
            // unipotent mixing matrix, always invertible
            let mix: Vec<Vec<Q>> = (0..k)
                .map(|i| (0..k).map(|j| if i == j { q(1) } else if j > i { q(a + j as i64) } else { q(0) }).collect())
                .collect();
            let plain = r.mul_general(&e_n(n), &xi, &e_n(n2), &eta, &SpanBasis::WeightComponents).unwrap();
            let mixed = r.mul_general(&e_n(n), &xi, &e_n(n2), &eta, &SpanBasis::Mixed(mix)).unwrap();
            prop_assert_eq!(plain, mixed);
        }
    }
}
