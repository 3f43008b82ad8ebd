//! The standard complex computing `(P_{h,L}^{g,K})_j(W)`, its homology, and
//! the derived functors `P_j` and `I^j` at the level of characters.
//!
//! Degree `d` is `R(g, K) ⊗_{R(L)} (⋀^d(h/l) ⊗ W)` with `W = V ⊗ ⋀^top(g/h)`.
//! The boundary lowers `d` and preserves `K`-weight, so everything is
//! computed one weight (or one `K`-type) at a time.
//!
//! For a torus `K` each weight space of a term is infinite-dimensional; it is
//! cut to `deg m + d ≤ N` for PBW monomials `m` in a complement of `Lie(K)`.
//! The cut is a subcomplex, and its associated graded pieces are Koszul
//! complexes that are exact above the lowest degree, so the homology is
//! exact once `N` exceeds the lowest degree at that weight by `dim(h/l)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{self, q, Q, SparseMatrix};
use crate::gkmod::{
    extend_to_basis, lambda_top, Character, CharacterKind, HModule, TopQuotient, Weight, Window,
};
use crate::hecke::{sl2_irrep_elt, MAX_DEGREE};
use crate::liealg::{KKind, LCoord, LieElt, PairData};
use crate::pbw::{monomials_up_to, Enveloping, Monomial, UElt};

/// The standard complex restricted to a window, with its boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdComplex {
    pub kind: CharacterKind,
    pub parity_coords: Vec<usize>,
    /// `dims[d][ν]`: dimension of the (truncated) degree-`d` term at `ν`.
    pub dims: Vec<BTreeMap<Weight, usize>>,
    /// `boundaries[d][ν]`: `∂′` from degree `d` to `d - 1`; empty for `d = 0`.
    pub boundaries: Vec<BTreeMap<Weight, SparseMatrix>>,
    /// PBW truncation used at each weight (torus `K` only).
    pub truncation: BTreeMap<Weight, u32>,
}

impl StdComplex {
    fn empty(kind: CharacterKind, parity_coords: Vec<usize>, top: usize) -> Self {
        StdComplex {
            kind,
            parity_coords,
            dims: vec![BTreeMap::new(); top + 1],
            boundaries: vec![BTreeMap::new(); top + 1],
            truncation: BTreeMap::new(),
        }
    }

    /// Highest homological degree, `dim(h/l)`.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn weights(&self) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.dims.iter().flat_map(|m| m.keys().cloned()).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    pub fn dim(&self, d: usize, w: &Weight) -> usize {
        self.dims.get(d).and_then(|m| m.get(w)).copied().unwrap_or(0)
    }

    fn boundary(&self, d: usize, w: &Weight) -> SparseMatrix {
        if d == 0 || d > self.top() {
            let cols = if d == 0 { self.dim(0, w) } else { 0 };
            let rows = if d == 0 { 0 } else { self.dim(self.top(), w) };
            return SparseMatrix::zeros(rows, cols);
        }
        self.boundaries[d]
            .get(w)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(d - 1, w), self.dim(d, w)))
    }

    /// First `(d, ν)` with `∂′_{d-1} ∘ ∂′_d ≠ 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<(usize, Weight)> {
        for w in self.weights() {
            for d in 2..=self.top() {
                let prod = self.boundary(d - 1, &w).mul(&self.boundary(d, &w)).ok()?;
                if !prod.is_zero() {
                    return Some((d, w));
                }
            }
        }
        None
    }

    /// `∂′ ∘ ∂′ = 0` on every block.
    pub fn check_d_squared(&self) -> Result<()> {
        match self.first_nonzero_square() {
            None => Ok(()),
            Some((d, w)) => {
                let prod = self.boundary(d - 1, &w).mul(&self.boundary(d, &w))?;
                Err(Error::CompositionNonzero {
                    rows: prod.rows(),
                    cols: prod.cols(),
                    nonzero: prod.nnz(),
                })
            }
        }
    }

    /// Character of `H_j`.
    pub fn homology(&self, j: usize) -> Result<Character> {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        if j > self.top() {
            return Ok(c);
        }
        for w in self.weights() {
            let out = self.boundary(j, &w);
            let inn = self.boundary(j + 1, &w);
            c.add(w, exactla::homology_dim(&out, &inn)? as i64);
        }
        Ok(c)
    }

    /// Character of `H^j` of the weightwise dual complex, with the
    /// transposed boundaries; reported at the negated weights.
    pub fn dual_cohomology(&self, j: usize) -> Result<Character> {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        if j > self.top() {
            return Ok(c);
        }
        for w in self.weights() {
            let up = self.boundary(j + 1, &w).transpose();
            let down = self.boundary(j, &w).transpose();
            let cocycles = up.cols() - exactla::rank(&up);
            let label = match self.kind {
                CharacterKind::TorusWeights => w.neg(),
                CharacterKind::Sl2KTypes => w.clone(),
            };
            c.add(label, cocycles as i64 - exactla::rank(&down) as i64);
        }
        Ok(c)
    }

    pub fn term_character(&self, d: usize) -> Character {
        let mut c = Character::empty(self.kind).with_parity_coords(self.parity_coords.clone());
        for (w, n) in &self.dims[d] {
            c.add(w.clone(), *n as i64);
        }
        c
    }

    /// `Σ_d (-1)^d` (character of term `d`).
    pub fn euler_terms(&self) -> Character {
        (0..=self.top()).fold(Character::empty(self.kind), |acc, d| {
            acc.sum(&self.term_character(d).scaled(if d % 2 == 0 { 1 } else { -1 }))
        })
    }

    /// `Σ_j (-1)^j` (character of `H_j`).
    pub fn euler_homology(&self) -> Result<Character> {
        let mut acc = Character::empty(self.kind);
        for j in 0..=self.top() {
            acc = acc.sum(&self.homology(j)?.scaled(if j % 2 == 0 { 1 } else { -1 }));
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|m| m.values().all(|d| *d == 0))
    }
}

/// Both Euler characteristics, after checking that they agree.
pub fn euler_characteristic(c: &StdComplex) -> Result<Character> {
    let terms = c.euler_terms();
    let hom = c.euler_homology()?;
    if terms.first_difference(&hom).is_some() {
        return Err(Error::Invalid("Euler characteristics of terms and homology differ".into()));
    }
    Ok(terms)
}

/// A basis vector of a term: left factor, increasing subset of the `ξ`, and
/// a basis index of `W`.
type Cell<L> = (L, Vec<usize>, usize);

/// Puts `k ∧ rest` in increasing order; `None` if `k` repeats.
fn wedge_insert(k: usize, rest: &[usize]) -> Option<(Q, Vec<usize>)> {
    if rest.contains(&k) {
        return None;
    }
    let before = rest.iter().filter(|x| **x < k).count();
    let mut v = rest.to_vec();
    v.insert(before, k);
    let sign = if before % 2 == 0 { Q::one() } else { -Q::one() };
    Some((sign, v))
}

fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// The ingredients of `∂′` that do not depend on the left factor.
struct Koszul {
    /// `W`-action of each `ξ_i`.
    xi_on_w: Vec<SparseMatrix>,
    /// `[ξ_s, ξ_t]` modulo `l`, in the `ξ` basis.
    brackets: Vec<Vec<Vec<Q>>>,
}

impl Koszul {
    fn new(pair: &PairData, w: &HModule) -> Result<Self> {
        let xi = pair.xi();
        let ld = pair.l_dim;
        let xi_on_w = (0..xi.len()).map(|i| w.actions[ld + i].clone()).collect();
        let brackets = xi
            .iter()
            .map(|a| {
                xi.iter()
                    .map(|b| {
                        let c = pair.h.coords(&pair.g.bracket(a, b)).ok_or(Error::NotSubalgebra)?;
                        Ok(c[ld..].to_vec())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Koszul { xi_on_w, brackets })
    }

    /// Matrix of `∂′` from `src` cells to `dst` cells.
    fn boundary<L: Ord + Clone>(
        &self,
        src: &[Cell<L>],
        dst: &[Cell<L>],
        mut left_mult: impl FnMut(&L, usize) -> Result<Vec<(L, Q)>>,
    ) -> Result<SparseMatrix> {
        let index: BTreeMap<&Cell<L>, usize> = dst.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut trip = Vec::new();
        let mut push = |cell: Cell<L>, c: Q, col: usize| -> Result<()> {
            if c.is_zero() {
                return Ok(());
            }
            match index.get(&cell) {
                Some(r) => {
                    trip.push((*r, col, c));
                    Ok(())
                }
                None => Err(Error::WindowTooSmall("boundary left the truncated term".into())),
            }
        };
        for (col, (left, wedge, wj)) in src.iter().enumerate() {
            for (t, xi) in wedge.iter().enumerate() {
                let sign = if t % 2 == 0 { Q::one() } else { -Q::one() };
                let mut rest = wedge.clone();
                rest.remove(t);
                // D ξ_i ⊗ (wedge without ξ_i) ⊗ w
                for (l2, c) in left_mult(left, *xi)? {
                    push((l2, rest.clone(), *wj), &sign * c, col)?;
                }
                // - D ⊗ (wedge without ξ_i) ⊗ ξ_i w
                for (r, cc, c) in self.xi_on_w[*xi].entries() {
                    if cc == *wj {
                        push((left.clone(), rest.clone(), r), -(&sign * c), col)?;
                    }
                }
            }
            for s in 0..wedge.len() {
                for t in s + 1..wedge.len() {
                    // (-1)^{i+j} with 1-based positions
                    let sign = if (s + t) % 2 == 0 { Q::one() } else { -Q::one() };
                    let mut rest = wedge.clone();
                    rest.remove(t);
                    rest.remove(s);
                    for (k, c) in self.brackets[wedge[s]][wedge[t]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        if let Some((sg, v)) = wedge_insert(k, &rest) {
                            push((left.clone(), v, *wj), &sign * &sg * c, col)?;
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triplets(dst.len(), src.len(), trip)
    }
}

/// `W = V ⊗ ⋀^top(g/h)`.
pub fn twisted_input(pair: &PairData, v: &HModule) -> Result<HModule> {
    v.tensor_onedim(&lambda_top(pair, TopQuotient::GModH)?)
}

/// The standard complex for `V`, forming `W` internally.
pub fn build_standard_complex(pair: &PairData, v: &HModule, window: &Window) -> Result<StdComplex> {
    build_complex_of(pair, &twisted_input(pair, v)?, window)
}

/// The standard complex resolving `W` itself.
pub fn build_complex_of(pair: &PairData, w: &HModule, window: &Window) -> Result<StdComplex> {
    if window.margin == 0 {
        return Err(Error::WindowTooSmall("margin must be at least 1".into()));
    }
    w.verify(pair)?;
    match pair.k.kind {
        KKind::Torus { .. } => build_torus(pair, w, window),
        KKind::Sl2 => build_sl2(pair, w, window),
    }
}

/// `L`-weight of `ξ_I ⊗ w_j`.
fn cell_weight(pair: &PairData, w: &HModule, wedge: &[usize], j: usize) -> Result<Weight> {
    let xi = pair.xi();
    let mut acc = w.l_weights[j].clone();
    for i in wedge {
        let lw = pair
            .l_weight_of(&xi[*i])
            .ok_or_else(|| Error::Invalid("ξ is not a weight vector".into()))?;
        acc = acc.add(&lw);
    }
    Ok(acc)
}

fn build_torus(pair: &PairData, w: &HModule, window: &Window) -> Result<StdComplex> {
    let nxi = pair.xi().len();
    let mut cx = StdComplex::empty(CharacterKind::TorusWeights, pair.parity_coords(), nxi);
    if w.dim() == 0 {
        return Ok(cx);
    }
    let g = &pair.g;
    let k = &pair.k.embedding;
    let ambient: Vec<LieElt> = (0..g.dim()).map(|i| g.basis(i)).collect();
    let mut basis = extend_to_basis(k, &ambient);
    let c_dim = basis.len();
    basis.extend(k.iter().cloned());
    let labels = (0..basis.len()).map(|i| format!("c{i}")).collect();
    let env = Enveloping::new(g.change_basis(&basis, labels)?);
    let cw: Vec<Weight> = basis[..c_dim]
        .iter()
        .map(|v| pair.weight_of(v).ok_or(Error::Invalid("complement not graded".into())))
        .collect::<Result<_>>()?;
    let xi_local: Vec<UElt> = pair
        .xi()
        .iter()
        .map(|x| {
            exactla::coordinates_in(&basis, x)
                .map(|c| env.lie_elt(&c))
                .ok_or_else(|| Error::Invalid("ξ outside g".into()))
        })
        .collect::<Result<_>>()?;
    let koszul = Koszul::new(pair, w)?;
    let rank = pair.rank();
    let mweight = |m: &Monomial| -> Weight {
        m.0.iter()
            .zip(&cw)
            .fold(Weight::zero(rank), |acc, (a, x)| acc.add(&x.scale(i64::from(*a))))
    };
    // every weight of the term differs from some cell weight by a root-lattice vector
    let mut cell_weights = Vec::new();
    for d in 0..=nxi {
        for wedge in subsets(nxi, d) {
            for j in 0..w.dim() {
                cell_weights.push((d, wedge.clone(), j, cell_weight(pair, w, &wedge, j)?));
            }
        }
    }
    let matches = |nu: &Weight, mw: &Weight, x: &Weight| -> bool {
        pair.l.iter().enumerate().all(|(r, lc)| match lc {
            LCoord::Full => nu.0[r] - mw.0[r] == x.0[r],
            LCoord::Parity => (nu.0[r] - mw.0[r] - x.0[r]).rem_euclid(2) == 0,
        })
    };
    for nu in window.weights() {
        let reachable = cell_weights
            .iter()
            .any(|(_, _, _, x)| (0..rank).all(|r| (nu.0[r] - x.0[r]).rem_euclid(2) == 0));
        if !reachable {
            continue;
        }
        let reach: i64 = cell_weights
            .iter()
            .map(|(_, _, _, x)| (0..rank).map(|r| ((nu.0[r] - x.0[r]).abs() + 1) / 2).sum::<i64>())
            .max()
            .unwrap_or(0);
        let n = u32::try_from(reach).unwrap_or(u32::MAX) + nxi as u32 + window.margin;
        if n > MAX_DEGREE {
            return Err(Error::WindowTooSmall(format!("degree {n} needed at {nu:?}")));
        }
        cx.truncation.insert(nu.clone(), n);
        let mons: Vec<(Monomial, Weight)> = monomials_up_to(c_dim, n)
            .into_iter()
            .map(|m| {
                let mw = mweight(&m);
                (m, mw)
            })
            .collect();
        let mut cells: Vec<Vec<Cell<Monomial>>> = vec![Vec::new(); nxi + 1];
        for (d, wedge, j, x) in &cell_weights {
            for (m, mw) in &mons {
                if m.degree() as usize + d <= n as usize && matches(&nu, mw, x) {
                    cells[*d].push((m.clone(), wedge.clone(), *j));
                }
            }
        }
        for (d, cs) in cells.iter_mut().enumerate() {
            cs.sort();
            cx.dims[d].insert(nu.clone(), cs.len());
        }
        for d in 1..=nxi {
            let left_mult = |m: &Monomial, i: usize| -> Result<Vec<(Monomial, Q)>> {
                let mut full = Monomial::one(basis.len());
                full.0[..c_dim].copy_from_slice(&m.0);
                let prod = env.mul(&UElt::monomial(full, Q::one()), &xi_local[i]);
                let mut out = Vec::new();
                for (mm, c) in prod.terms() {
                    let cpart = Monomial(mm.0[..c_dim].to_vec());
                    // U(k)-letters act by the weight left over after the c-part
                    let chi = nu.sub(&mweight(&cpart));
                    let mut s = c.clone();
                    for (r, a) in mm.0[c_dim..].iter().enumerate() {
                        s *= exactla::qpow(&q(chi.0[r]), i64::from(*a));
                    }
                    out.push((cpart, s));
                }
                Ok(out)
            };
            let b = koszul.boundary(&cells[d], &cells[d - 1], left_mult)?;
            cx.boundaries[d].insert(nu.clone(), b);
        }
    }
    Ok(cx)
}

fn build_sl2(pair: &PairData, w: &HModule, window: &Window) -> Result<StdComplex> {
    let nxi = pair.xi().len();
    let mut cx = StdComplex::empty(CharacterKind::Sl2KTypes, Vec::new(), nxi);
    if w.dim() == 0 {
        return Ok(cx);
    }
    let koszul = Koszul::new(pair, w)?;
    let xi_coords: Vec<Vec<Q>> = pair
        .xi()
        .iter()
        .map(|x| {
            exactla::coordinates_in(&pair.k.embedding, x)
                .ok_or_else(|| Error::Invalid("ξ outside Lie(K)".into()))
        })
        .collect::<Result<_>>()?;
    let (lo, hi) = window.bounds[0];
    for n in lo.max(0)..=hi {
        let tau = Weight(vec![n]);
        let mut cells: Vec<Vec<Cell<usize>>> = vec![Vec::new(); nxi + 1];
        for (d, cs) in cells.iter_mut().enumerate() {
            for wedge in subsets(nxi, d) {
                for j in 0..w.dim() {
                    let x = cell_weight(pair, w, &wedge, j)?.0[0];
                    // v_i^* balances a vector of weight n - 2i
                    if (n - x) % 2 == 0 && x.abs() <= n {
                        cs.push((((n - x) / 2) as usize, wedge.clone(), j));
                    }
                }
            }
            cs.sort();
            cx.dims[d].insert(tau.clone(), cs.len());
        }
        let pis: Vec<SparseMatrix> = xi_coords.iter().map(|c| sl2_irrep_elt(n, c)).collect();
        for d in 1..=nxi {
            // D ξ ↦ D ∘ π_n(ξ): v_i^* ∘ π(ξ) = Σ_k π(ξ)[i][k] v_k^*
            let left_mult = |i: &usize, x: usize| -> Result<Vec<(usize, Q)>> {
                Ok(pis[x]
                    .entries()
                    .filter(|(r, _, _)| r == i)
                    .map(|(_, k, c)| (k, c.clone()))
                    .collect())
            };
            let b = koszul.boundary(&cells[d], &cells[d - 1], left_mult)?;
            cx.boundaries[d].insert(tau.clone(), b);
        }
    }
    Ok(cx)
}

/// Character of `(P_{h,L}^{g,K})_j(V ⊗ ⋀^top(g/h))`.
pub fn derived_p(pair: &PairData, v: &HModule, j: usize, window: &Window) -> Result<Character> {
    build_standard_complex(pair, v, window)?.homology(j)
}

/// Window of the dual module: negated bounds for torus weights; `K`-type
/// labels are unchanged since every `SL(2)` irreducible is self-dual.
pub fn dual_window(pair: &PairData, window: &Window) -> Window {
    match pair.k.kind {
        KKind::Sl2 => window.clone(),
        KKind::Torus { .. } => Window {
            bounds: window.bounds.iter().map(|(lo, hi)| (-hi, -lo)).collect(),
            margin: window.margin,
        },
    }
}

/// Character of `(I_{h,L}^{g,K})^j(V ⊗ ⋀^top(g/h))`: the cohomology of the
/// `K`-finite dual of the standard complex of `V^*`.
pub fn derived_i(pair: &PairData, v: &HModule, j: usize, window: &Window) -> Result<Character> {
    build_standard_complex(pair, &v.dual(), &dual_window(pair, window))?.dual_cohomology(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkmod::one_dim_module;
    use crate::hecke::p_deg0_oracle;
    use crate::liealg::{Family, FactorKind};
    use crate::locp1;

    fn v_for(p: &PairData, lambda: &[i64], parity: &[u8]) -> HModule {
        let vals = locp1::isotropy_values(p, lambda).unwrap();
        let wt = locp1::isotropy_weight(p, lambda, parity).unwrap();
        one_dim_module(p, &vals, &wt).unwrap()
    }

    fn w1(lo: i64, hi: i64) -> Window {
        Window::new(vec![(lo, hi)]).unwrap()
    }

    #[test]
    fn closed_orbit_complex() {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        for l in -4..=4 {
            let v = v_for(&p, &[l], &[]);
            let cx = build_standard_complex(&p, &v, &w1(-8, 8)).unwrap();
            assert_eq!(cx.top(), 1);
            cx.check_d_squared().unwrap();
            let h0 = cx.homology(0).unwrap();
            for nu in -8..=8 {
                let expect = i64::from(nu >= l + 2 && (nu - l) % 2 == 0);
                assert_eq!(h0.get(&Weight(vec![nu])), expect, "λ₀={l} ν={nu}");
            }
            assert!(cx.homology(1).unwrap().is_zero());
            assert_eq!(euler_characteristic(&cx).unwrap(), h0);
        }
    }

    #[test]
    fn boundary_of_single_generator() {
        // 1 ⊗ f̄ ⊗ w ↦ f ⊗ w - 1 ⊗ f·w = f ⊗ w
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let v = v_for(&p, &[0], &[]);
        let cx = build_standard_complex(&p, &v, &Window::with_margin(vec![(0, 0)], 1).unwrap()).unwrap();
        let b = &cx.boundaries[1][&Weight(vec![0])];
        // at ν = 0 = λ₀+2-2: cells of degree 1 include 1 ⊗ f̄ ⊗ w; its image is the single monomial f
        assert!(b.entries().any(|(_, _, c)| *c == q(1)));
        assert_eq!(exactla::rank(b), cx.dim(1, &Weight(vec![0])));
    }

    #[test]
    fn open_orbit_complex() {
        let p = PairData::new(Family::open_orbit()).unwrap();
        for l in -2..=2 {
            for par in 0..2u8 {
                let v = v_for(&p, &[l], &[par]);
                let cx = build_standard_complex(&p, &v, &w1(-5, 5)).unwrap();
                assert_eq!(cx.top(), 2);
                cx.check_d_squared().unwrap();
                let h0 = cx.homology(0).unwrap();
                for nu in -5..=5 {
                    let expect = i64::from((nu - i64::from(par)).rem_euclid(2) == 0);
                    assert_eq!(h0.get(&Weight(vec![nu])), expect, "λ₀={l} p={par} ν={nu}");
                }
                assert!(cx.homology(1).unwrap().is_zero());
                assert!(cx.homology(2).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn borel_weil_bott_complex() {
        let p = PairData::new(Family::BorelWeilBott).unwrap();
        let win = w1(0, 10);
        for l in -7..=6 {
            let v = v_for(&p, &[l], &[]);
            let cx = build_standard_complex(&p, &v, &win).unwrap();
            let (h0, h1) = (cx.homology(0).unwrap(), cx.homology(1).unwrap());
            let mu = l + 2;
            let mut e0 = Character::ktypes();
            let mut e1 = Character::ktypes();
            if mu <= 0 {
                e0.add(Weight(vec![-mu]), 1);
            }
            if l >= 0 {
                e1.add(Weight(vec![l]), 1);
            }
            assert_eq!(h0, e0, "λ₀={l}");
            assert_eq!(h1, e1, "λ₀={l}");
        }
    }

    #[test]
    fn product_complex() {
        let p = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::ClosedZero])).unwrap();
        let v = v_for(&p, &[0, -1], &[]);
        let cx = build_standard_complex(&p, &v, &Window::new(vec![(-2, 4), (-2, 4)]).unwrap()).unwrap();
        assert_eq!(cx.top(), 2);
        cx.check_d_squared().unwrap();
        let h0 = cx.homology(0).unwrap();
        assert_eq!(h0.get(&Weight(vec![2, 1])), 1);
        assert_eq!(h0.get(&Weight(vec![4, 3])), 1);
        assert_eq!(h0.get(&Weight(vec![0, 1])), 0);
        assert!(cx.homology(1).unwrap().is_zero());
        euler_characteristic(&cx).unwrap();
    }

    #[test]
    fn mixed_product_matches_oracle() {
        let p = PairData::new(Family::product(vec![FactorKind::ClosedZero, FactorKind::OpenOne])).unwrap();
        let v = v_for(&p, &[1, 0], &[0, 1]);
        let win = Window::new(vec![(-3, 5), (-3, 3)]).unwrap();
        let cx = build_standard_complex(&p, &v, &win).unwrap();
        cx.check_d_squared().unwrap();
        let w = twisted_input(&p, &v).unwrap();
        assert_eq!(cx.homology(0).unwrap(), p_deg0_oracle(&p, &w, &win).unwrap());
    }

    #[test]
    fn degree_zero_matches_oracle() {
        let cases: Vec<(Family, Window, Vec<u8>)> = vec![
            (Family::closed_orbit(), w1(-6, 6), vec![]),
            (Family::open_orbit(), w1(-4, 4), vec![1]),
            (Family::BorelWeilBott, w1(0, 6), vec![]),
        ];
        for (fam, win, par) in cases {
            let p = PairData::new(fam).unwrap();
            for l in -3..=2 {
                let v = v_for(&p, &[l], &par);
                let w = twisted_input(&p, &v).unwrap();
                assert_eq!(
                    derived_p(&p, &v, 0, &win).unwrap(),
                    p_deg0_oracle(&p, &w, &win).unwrap(),
                    "λ₀={l}"
                );
            }
        }
    }

    #[test]
    fn zero_module() {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let zero = HModule {
            actions: vec![SparseMatrix::zeros(0, 0); 2],
            l_weights: vec![],
        };
        let cx = build_complex_of(&p, &zero, &w1(-2, 2)).unwrap();
        assert!(cx.is_zero());
        assert!(euler_characteristic(&cx).unwrap().is_zero());
        assert!(derived_i(&p, &zero, 0, &w1(-2, 2)).unwrap().is_zero());
    }

    #[test]
    fn duality_route() {
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let v = v_for(&p, &[2], &[]);
        let win = w1(-8, 8);
        let lhs = derived_i(&p, &v.dual(), 0, &win).unwrap();
        let rhs = derived_p(&p, &v, 0, &dual_window(&p, &win)).unwrap().negate_weights();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.get(&Weight(vec![-4])), 1);
    }

    fn euler_of(f: impl Fn(usize) -> Character) -> Character {
        (0..=1).fold(Character::ktypes(), |acc, j| acc.sum(&f(j).scaled(if j == 0 { 1 } else { -1 })))
    }

    #[test]
    fn borel_weil_bott_euler_duality() {
        let p = PairData::new(Family::BorelWeilBott).unwrap();
        let win = w1(0, 10);
        for l in -5..=5 {
            let v = v_for(&p, &[l], &[]);
            let ei = euler_of(|j| derived_i(&p, &v.dual(), j, &win).unwrap());
            let ep = euler_of(|j| derived_p(&p, &v, j, &win).unwrap());
            assert_eq!(ei, ep, "λ₀={l}");
        }
        // without the dual the two differ: I^0(V) = V_1 but P_1(V) = V_3
        let v = v_for(&p, &[3], &[]);
        let ei = euler_of(|j| derived_i(&p, &v, j, &win).unwrap());
        let ep = euler_of(|j| derived_p(&p, &v, j, &win).unwrap());
        assert_eq!(ei.to_string(), "V_1");
        assert_eq!(ep.to_string(), "V_3×-1");
    }

    #[test]
    fn margin_stability() {
        let p = PairData::new(Family::open_orbit()).unwrap();
        let v = v_for(&p, &[1], &[1]);
        let a = Window::with_margin(vec![(-4, 4)], 1).unwrap();
        let b = a.with_extra_margin(1);
        for j in 0..=2 {
            assert_eq!(derived_p(&p, &v, j, &a).unwrap(), derived_p(&p, &v, j, &b).unwrap());
        }
    }

    #[test]
    fn non_split_extension_is_additive() {
        // (b0, T)-module with basis w1 (weight μ), w2 (weight μ+2), f w2 = w1
        let p = PairData::new(Family::closed_orbit()).unwrap();
        let mu = -1;
        let h = SparseMatrix::from_i64(&[&[mu, 0], &[0, mu + 2]]);
        let f = SparseMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let ext = HModule {
            actions: vec![h, f],
            l_weights: vec![Weight(vec![mu]), Weight(vec![mu + 2])],
        };
        ext.verify(&p).unwrap();
        let win = w1(-6, 8);
        let whole = derived_p(&p, &ext, 0, &win).unwrap();
        let a = derived_p(&p, &v_for(&p, &[mu], &[]), 0, &win).unwrap();
        let b = derived_p(&p, &v_for(&p, &[mu + 2], &[]), 0, &win).unwrap();
        assert_eq!(whole, a.sum(&b));
        assert!(derived_p(&p, &ext, 1, &win).unwrap().is_zero());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_insert(0, &[1, 2]), Some((q(1), vec![0, 1, 2])));
        assert_eq!(wedge_insert(2, &[0, 1]), Some((q(1), vec![0, 1, 2])));
        assert_eq!(wedge_insert(1, &[0, 2]), Some((q(-1), vec![0, 1, 2])));
        assert_eq!(wedge_insert(1, &[1]), None);
        assert_eq!(subsets(3, 2).len(), 3);
    }
}
