//! Lie algebras by structure constants, and the pairs `(g, K)` with subpair data
//! `(h, L)` that the rest of the crate induces from.
//!
//! Only the families below are realized. Each is a direct sum of `sl(2)` factors
//! acting on a product of projective lines, with `K` either the diagonal torus
//! (one rank per factor) or `K = G = SL(2)`:
//!
//! | family | `K` | `H` | `M = K ∩ H` | `u` |
//! |---|---|---|---|---|
//! | closed orbit | torus | Borel fixing `z = 0` | torus | 0 |
//! | open orbit | torus | Borel fixing `z = 1` | `{±1}` | 0 |
//! | Borel–Weil–Bott | `SL(2)` | Borel fixing `z = 0` | Borel | 1 |
//! | product | torus | product of the above | product | 0 |

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{self, q, Q, SparseMatrix};
use crate::gkmod::Weight;
use crate::locp1;

/// A Lie algebra element in coordinates of the ambient basis.
pub type LieElt = Vec<Q>;

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlg {
    labels: Vec<String>,
    /// `consts[i][j]` = coordinates of `[x_i, x_j]`.
    consts: Vec<Vec<LieElt>>,
}

impl fmt::Debug for LieAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlg{:?}", self.labels)
    }
}

impl LieAlg {
    /// Builds and validates a Lie algebra (antisymmetry and Jacobi over all
    /// basis triples).
    pub fn new(labels: Vec<String>, consts: Vec<Vec<LieElt>>) -> Result<Self> {
        let alg = Self::new_unchecked(labels, consts)?;
        alg.verify()?;
        Ok(alg)
    }

    /// Shape-checks only. Used to build deliberately broken fixtures.
    pub fn new_unchecked(labels: Vec<String>, consts: Vec<Vec<LieElt>>) -> Result<Self> {
        let n = labels.len();
        if consts.len() != n
            || consts
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for a {n}-dimensional algebra"
            )));
        }
        Ok(LieAlg { labels, consts })
    }

    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let s: Vec<Q> = self.consts[i][j]
                    .iter()
                    .zip(&self.consts[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if s.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Antisymmetry(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> LieElt {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn zero(&self) -> LieElt {
        vec![Q::zero(); self.dim()]
    }

    pub fn structure_constants(&self) -> &[Vec<LieElt>] {
        &self.consts
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &LieElt {
        &self.consts[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> LieElt {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` in the basis, column `j` = `[x, x_j]`.
    pub fn ad(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let n = self.dim();
        let cols: Vec<LieElt> = (0..n).map(|j| self.bracket(x, &self.basis(j))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// The same algebra written in a new basis `new_basis[k]` (coordinates in
    /// the current basis).
    pub fn change_basis(&self, new_basis: &[LieElt], labels: Vec<String>) -> Result<LieAlg> {
        let n = self.dim();
        if new_basis.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch("change of basis needs dim vectors".into()));
        }
        // columns of P are the new basis vectors; coordinates = P^{-1} v
        let p: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|k| new_basis[k][i].clone()).collect())
            .collect();
        let pinv = exactla::inverse(&p).ok_or(Error::LinearlyDependent)?;
        let coords = |v: &[Q]| -> LieElt {
            pinv.iter()
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        };
        let consts = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| coords(&self.bracket(&new_basis[i], &new_basis[j])))
                    .collect()
            })
            .collect();
        LieAlg::new(labels, consts)
    }
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// `sl(2)` in the basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlg {
    let z = || vec![q(0); 3];
    let v = |a, b, c| vec![q(a), q(b), q(c)];
    let mut c = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
    // indices: e = 0, h = 1, f = 2
    c[1][0] = v(2, 0, 0);
    c[0][1] = v(-2, 0, 0);
    c[1][2] = v(0, 0, -2);
    c[2][1] = v(0, 0, 2);
    c[0][2] = v(0, 1, 0);
    c[2][0] = v(0, -1, 0);
    LieAlg::new(labels(&["e", "h", "f"]), c).expect("sl2 structure constants")
}

/// Abelian algebra of dimension `r`.
pub fn torus(r: usize) -> LieAlg {
    let ls = if r == 1 {
        vec!["t".to_string()]
    } else {
        (1..=r).map(|i| format!("t{i}")).collect()
    };
    LieAlg::new(ls, vec![vec![vec![q(0); r]; r]; r]).expect("abelian")
}

/// Block-diagonal sum; labels of both summands get a factor suffix.
pub fn direct_sum(a: &LieAlg, b: &LieAlg) -> LieAlg {
    let (n, m) = (a.dim(), b.dim());
    let suffix = |l: &str, k: usize| {
        if l.contains('_') {
            l.to_string()
        } else {
            format!("{l}_{k}")
        }
    };
    let second_index = if a.labels.iter().all(|l| l.contains('_')) {
        a.labels
            .iter()
            .filter_map(|l| l.rsplit('_').next()?.parse::<usize>().ok())
            .max()
            .unwrap_or(1)
            + 1
    } else {
        2
    };
    let mut ls: Vec<String> = a.labels.iter().map(|l| suffix(l, 1)).collect();
    ls.extend(b.labels.iter().map(|l| format!("{l}_{second_index}")));
    let mut consts = vec![vec![vec![q(0); n + m]; n + m]; n + m];
    for (i, row) in a.consts.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            consts[i][j][..n].clone_from_slice(v);
        }
    }
    for (i, row) in b.consts.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            consts[n + i][n + j][n..].clone_from_slice(v);
        }
    }
    LieAlg::new(ls, consts).expect("direct sum of Lie algebras")
}

/// A subalgebra given by coordinate vectors in an ambient algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalg {
    basis: Vec<LieElt>,
}

impl Subalg {
    pub fn new(ambient: &LieAlg, basis: Vec<LieElt>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient.dim()) {
            return Err(Error::DimensionMismatch("subalgebra basis vector length".into()));
        }
        if exactla::rank_of_vectors(&basis) != basis.len() {
            return Err(Error::LinearlyDependent);
        }
        let s = Subalg { basis };
        for x in &s.basis {
            for y in &s.basis {
                if !s.contains(&ambient.bracket(x, y)) {
                    return Err(Error::NotSubalgebra);
                }
            }
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LieElt] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        exactla::rank_of_vectors(&vs) == self.basis.len()
    }

    /// Coordinates of `v` in this subalgebra's basis.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        exactla::coordinates_in(&self.basis, v)
    }

    /// Basis of the intersection with another subspace of the same ambient.
    pub fn intersect(&self, other: &[LieElt]) -> Vec<LieElt> {
        let (a, b) = (self.basis.len(), other.len());
        if a == 0 || b == 0 {
            return Vec::new();
        }
        let n = self.basis[0].len();
        // solve sum x_i s_i - sum y_j o_j = 0
        let trip = (0..n).flat_map(|r| {
            self.basis
                .iter()
                .enumerate()
                .map(move |(i, s)| (r, i, s[r].clone()))
                .chain(other.iter().enumerate().map(move |(j, o)| (r, a + j, -o[r].clone())))
        });
        let m = SparseMatrix::from_triplets(n, a + b, trip).expect("in range");
        exactla::kernel_basis(&m)
            .into_iter()
            .map(|x| {
                let mut v = vec![Q::zero(); n];
                for (xi, s) in x[..a].iter().zip(&self.basis) {
                    for (vv, ss) in v.iter_mut().zip(s) {
                        *vv += xi * ss;
                    }
                }
                v
            })
            .collect()
    }
}

/// Points of `P^1` in one of the two standard charts, `z` and `w = 1/z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartPoint {
    Z(Q),
    W(Q),
}

impl ChartPoint {
    pub fn chart(&self) -> locp1::Chart {
        match self {
            ChartPoint::Z(_) => locp1::Chart::Z,
            ChartPoint::W(_) => locp1::Chart::W,
        }
    }

    pub fn coordinate(&self) -> &Q {
        match self {
            ChartPoint::Z(c) | ChartPoint::W(c) => c,
        }
    }
}

/// Isotropy subalgebra of a point of `P^1` for the `sl(2)` action: the
/// elements whose vector field vanishes there.
pub fn stabilizer_subalgebra(point: &ChartPoint) -> Subalg {
    let g = sl2();
    let chart = point.chart();
    // value of the vector field of each basis element at the point
    let row: Vec<Q> = (0..3)
        .map(|i| locp1::vector_field_in(chart, i).vector_part().eval(point.coordinate()))
        .collect();
    let m = SparseMatrix::from_dense(&[row]);
    let basis = exactla::kernel_basis(&m);
    Subalg::new(&g, basis).expect("isotropy algebras are closed")
}

/// The group `K`: a torus of rank `r` (one coordinate per factor), or
/// `SL(2)` embedded as all of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KKind {
    Torus { rank: usize },
    Sl2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KDescriptor {
    pub kind: KKind,
    /// Image of the basis of `Lie(K)` in `g`.
    pub embedding: Vec<LieElt>,
    /// Weight of each basis element of `g` under the maximal torus of `K`.
    pub adjoint_weights: Vec<Weight>,
}

impl KDescriptor {
    pub fn rank(&self) -> usize {
        match self.kind {
            KKind::Torus { rank } => rank,
            KKind::Sl2 => 1,
        }
    }

    /// Checks that `embedding` is a homomorphism from `Lie(K)` and that the
    /// torus weights are the `ad` eigenvalues on `g`.
    pub fn verify(&self, g: &LieAlg, cartan: &[LieElt]) -> Result<()> {
        let k = Subalg::new(g, self.embedding.clone())?;
        match self.kind {
            KKind::Torus { rank } => {
                if k.dim() != rank {
                    return Err(Error::Invalid("torus rank and embedding disagree".into()));
                }
                for x in &self.embedding {
                    for y in &self.embedding {
                        if g.bracket(x, y).iter().any(|c| !c.is_zero()) {
                            return Err(Error::Invalid("torus embedding is not abelian".into()));
                        }
                    }
                }
            }
            KKind::Sl2 => {
                let s = sl2();
                for i in 0..3 {
                    for j in 0..3 {
                        let lhs = g.bracket(&self.embedding[i], &self.embedding[j]);
                        let mut rhs = g.zero();
                        for (c, img) in s.bracket_basis(i, j).iter().zip(&self.embedding) {
                            for (r, x) in rhs.iter_mut().zip(img) {
                                *r += c * x;
                            }
                        }
                        if lhs != rhs {
                            return Err(Error::Invalid("SL2 embedding is not a homomorphism".into()));
                        }
                    }
                }
            }
        }
        for (i, w) in self.adjoint_weights.iter().enumerate() {
            for (c, t) in cartan.iter().enumerate() {
                let lhs = g.bracket(t, &g.basis(i));
                let expect: Vec<Q> = g.basis(i).iter().map(|x| x * q(w.0[c])).collect();
                if lhs != expect {
                    return Err(Error::Invalid(format!(
                        "adjoint weight of {} is not {:?}",
                        g.label(i),
                        w
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How `L` meets one coordinate of the torus: the whole circle, or only `{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LCoord {
    Full,
    Parity,
}

/// One `sl(2)` factor of a torus family, named by where its base point sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// Closed `K`-orbit `{0}` in the `z` chart.
    ClosedZero,
    /// Closed `K`-orbit `{∞}`, written at `w = 0`.
    ClosedInfinity,
    /// Open `K`-orbit through `z = 1`.
    OpenOne,
}

impl FactorKind {
    pub fn base_point(self) -> ChartPoint {
        match self {
            FactorKind::ClosedZero => ChartPoint::Z(q(0)),
            FactorKind::ClosedInfinity => ChartPoint::W(q(0)),
            FactorKind::OpenOne => ChartPoint::Z(q(1)),
        }
    }

    pub fn is_open(self) -> bool {
        self == FactorKind::OpenOne
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `K` the diagonal torus of each factor.
    Torus(Vec<FactorKind>),
    /// `K = G = SL(2)`, `H` the Borel fixing `z = 0`.
    BorelWeilBott,
}

impl Family {
    pub fn closed_orbit() -> Self {
        Family::Torus(vec![FactorKind::ClosedZero])
    }

    pub fn open_orbit() -> Self {
        Family::Torus(vec![FactorKind::OpenOne])
    }

    pub fn product(factors: Vec<FactorKind>) -> Self {
        Family::Torus(factors)
    }

    /// One-letter code used by the CLI and reports.
    pub fn code(&self) -> &'static str {
        match self {
            Family::Torus(f) if f.len() == 1 && f[0] == FactorKind::OpenOne => "B",
            Family::Torus(f) if f.len() == 1 => "A",
            Family::Torus(_) => "D",
            Family::BorelWeilBott => "C",
        }
    }

    pub fn name(&self) -> &'static str {
        match self.code() {
            "A" => "closed-orbit",
            "B" => "open-orbit",
            "C" => "borel-weil-bott",
            _ => "product",
        }
    }

    pub fn factors(&self) -> Vec<FactorKind> {
        match self {
            Family::Torus(f) => f.clone(),
            Family::BorelWeilBott => vec![FactorKind::ClosedZero],
        }
    }
}

/// A pair `(g, K)` with subpair `(h, L)` and Levi data `M = L ⋉ U`.
#[derive(Debug, Clone)]
pub struct PairData {
    pub family: Family,
    pub g: LieAlg,
    pub k: KDescriptor,
    /// Basis ordered as a basis of `l` followed by a complement `ξ_1..ξ_q`.
    pub h: Subalg,
    pub l_dim: usize,
    /// Per torus coordinate, how `L` meets it.
    pub l: Vec<LCoord>,
    pub u_dim: usize,
    pub base_points: Vec<ChartPoint>,
    /// Cartan elements `h_1..h_r` defining the weight coordinates.
    pub cartan: Vec<LieElt>,
}

impl PairData {
    pub fn new(family: Family) -> Result<Self> {
        match &family {
            Family::Torus(factors) => Self::torus_family(family.clone(), factors),
            Family::BorelWeilBott => Self::borel_weil_bott(),
        }
    }

    fn torus_family(family: Family, factors: &[FactorKind]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("a product needs at least one factor".into()));
        }
        let r = factors.len();
        let g = factors[1..].iter().fold(sl2(), |acc, _| direct_sum(&acc, &sl2()));
        let n = g.dim();
        let embed = |f: usize, v: &LieElt| -> LieElt {
            let mut out = vec![Q::zero(); n];
            for (i, x) in v.iter().enumerate() {
                out[3 * f + i] = x.clone();
            }
            out
        };
        let cartan: Vec<LieElt> = (0..r).map(|f| g.basis(3 * f + 1)).collect();
        let adjoint_weights = (0..n)
            .map(|i| {
                let (f, j) = (i / 3, i % 3);
                let mut w = vec![0i64; r];
                w[f] = [2, 0, -2][j];
                Weight(w)
            })
            .collect();
        let k = KDescriptor {
            kind: KKind::Torus { rank: r },
            embedding: cartan.clone(),
            adjoint_weights,
        };
        let mut hb = Vec::new();
        for (f, kind) in factors.iter().enumerate() {
            for v in stabilizer_subalgebra(&kind.base_point()).basis() {
                hb.push(embed(f, v));
            }
        }
        let h0 = Subalg::new(&g, hb)?;
        let l_basis = h0.intersect(&cartan);
        let h = Subalg::new(&g, order_l_first(&l_basis, h0.basis()))?;
        let l = factors
            .iter()
            .map(|f| if f.is_open() { LCoord::Parity } else { LCoord::Full })
            .collect();
        let base_points = factors.iter().map(|f| f.base_point()).collect();
        let pair = PairData {
            family,
            g,
            k,
            l_dim: l_basis.len(),
            h,
            l,
            u_dim: 0,
            base_points,
            cartan,
        };
        pair.verify()?;
        Ok(pair)
    }

    fn borel_weil_bott() -> Result<Self> {
        let g = sl2();
        let cartan = vec![g.basis(1)];
        let k = KDescriptor {
            kind: KKind::Sl2,
            embedding: (0..3).map(|i| g.basis(i)).collect(),
            adjoint_weights: vec![Weight(vec![2]), Weight(vec![0]), Weight(vec![-2])],
        };
        let h0 = stabilizer_subalgebra(&ChartPoint::Z(q(0)));
        let l_basis = h0.intersect(&cartan);
        let h = Subalg::new(&g, order_l_first(&l_basis, h0.basis()))?;
        let pair = PairData {
            family: Family::BorelWeilBott,
            g,
            k,
            l_dim: l_basis.len(),
            h,
            l: vec![LCoord::Full],
            // M = H is the Borel, so dim U = dim m - dim l = 1
            u_dim: 1,
            base_points: vec![ChartPoint::Z(q(0))],
            cartan,
        };
        pair.verify()?;
        Ok(pair)
    }

    /// Invariants tying the pieces together.
    pub fn verify(&self) -> Result<()> {
        self.g.verify()?;
        self.k.verify(&self.g, &self.cartan)?;
        // Lie(L) = Lie(K) ∩ h
        let kh = self.h.intersect(&self.k.embedding);
        let m_dim = kh.len();
        let l_part = &self.h.basis()[..self.l_dim];
        if self.k.kind == KKind::Sl2 {
            // L is the maximal torus; M is the whole Borel
            if self.l_dim != 1 || m_dim != self.h.dim() {
                return Err(Error::Invalid("Borel–Weil–Bott subpair data".into()));
            }
        } else if m_dim != self.l_dim {
            return Err(Error::Invalid("Lie(L) must equal Lie(K) ∩ h".into()));
        }
        for x in l_part {
            if !self.cartan_span_contains(x) {
                return Err(Error::Invalid("l must lie in the Cartan".into()));
            }
        }
        if self.u_dim != m_dim - self.l_dim {
            return Err(Error::Invalid("u_dim must be dim m - dim l".into()));
        }
        Ok(())
    }

    fn cartan_span_contains(&self, x: &[Q]) -> bool {
        let mut vs = self.cartan.clone();
        let r = exactla::rank_of_vectors(&vs);
        vs.push(x.to_vec());
        exactla::rank_of_vectors(&vs) == r
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn l_basis(&self) -> &[LieElt] {
        &self.h.basis()[..self.l_dim]
    }

    /// The complement `ξ_1..ξ_q` of `l` in `h`, a basis of `h/l`.
    pub fn xi(&self) -> &[LieElt] {
        &self.h.basis()[self.l_dim..]
    }

    pub fn adjoint_weight(&self, i: usize) -> &Weight {
        &self.k.adjoint_weights[i]
    }

    /// Torus weight of `v`, if `v` is a weight vector.
    pub fn weight_of(&self, v: &[Q]) -> Option<Weight> {
        let mut found: Option<&Weight> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.adjoint_weight(i);
            match found {
                None => found = Some(w),
                Some(f) if f == w => {}
                Some(_) => return None,
            }
        }
        Some(found.cloned().unwrap_or_else(|| Weight::zero(self.rank())))
    }

    /// Weight restricted to the `Full` coordinates of `L` and parity on the
    /// `Parity` coordinates. `None` if `v` mixes incompatible weights.
    pub fn l_weight_of(&self, v: &[Q]) -> Option<Weight> {
        let mut found: Option<Weight> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.restrict_to_l(self.adjoint_weight(i));
            match &found {
                None => found = Some(w),
                Some(f) if *f == w => {}
                Some(_) => return None,
            }
        }
        Some(found.unwrap_or_else(|| Weight::zero(self.rank())))
    }

    /// Projects a `K`-weight to the character group of `L`: full coordinates
    /// kept, parity coordinates reduced mod 2.
    pub fn restrict_to_l(&self, w: &Weight) -> Weight {
        Weight(
            w.0.iter()
                .zip(&self.l)
                .map(|(x, c)| match c {
                    LCoord::Full => *x,
                    LCoord::Parity => x.rem_euclid(2),
                })
                .collect(),
        )
    }

    /// Whether all coordinates of `K` meet `L` in the full circle.
    pub fn k_equals_l_torus(&self) -> bool {
        self.k.kind != KKind::Sl2 && self.l.iter().all(|c| *c == LCoord::Full)
    }

    /// Indices of weight coordinates on which `L` only sees a sign.
    pub fn parity_coords(&self) -> Vec<usize> {
        (0..self.l.len()).filter(|i| self.l[*i] == LCoord::Parity).collect()
    }
}

/// Reorders a basis of `h` so that it starts with `l_basis` followed by a
/// complement picked greedily from `h_basis`.
fn order_l_first(l_basis: &[LieElt], h_basis: &[LieElt]) -> Vec<LieElt> {
    let mut out: Vec<LieElt> = l_basis.to_vec();
    for v in h_basis {
        let mut trial = out.clone();
        trial.push(v.clone());
        if exactla::rank_of_vectors(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}
