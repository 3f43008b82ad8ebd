//! `U(g)` in Poincaré–Birkhoff–Witt normal form.
//!
//! Monomials are ordered products `x_0^{a_0} x_1^{a_1} …` in the basis order
//! of the ambient [`LieAlg`]. Products are straightened by rewriting
//! `x_j x_i = x_i x_j + [x_j, x_i]` for `j > i`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::exactla::Q;
use crate::liealg::LieAlg;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Basis indices in order, with repetition.
    pub fn letters(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, a)| std::iter::repeat_n(i, *a as usize))
            .collect()
    }

    fn last_letter(&self) -> Option<usize> {
        self.0.iter().rposition(|a| *a > 0)
    }
}

/// Finite linear combination of PBW monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UElt {
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for UElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}·{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut u = Self::zero();
        u.add_term(m, c);
        u
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UElt) -> UElt {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Q) -> UElt {
        let mut r = UElt::zero();
        for (m, c) in self.terms() {
            r.add_term(m.clone(), c * s);
        }
        r
    }

    pub fn sub(&self, o: &UElt) -> UElt {
        self.add(&o.scale(&-Q::one()))
    }

    /// Maximal total degree; zero counts as degree 0.
    pub fn filtration_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }
}

/// `U(g)` for a fixed Lie algebra, with a memo of straightened products.
pub struct Enveloping {
    g: LieAlg,
    memo: RefCell<HashMap<(Monomial, usize), UElt>>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping").field("g", &self.g.labels()).finish()
    }
}

impl Enveloping {
    pub fn new(g: LieAlg) -> Self {
        Enveloping {
            g,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &LieAlg {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn one(&self) -> UElt {
        UElt::monomial(Monomial::one(self.dim()), Q::one())
    }

    pub fn scalar(&self, c: Q) -> UElt {
        UElt::monomial(Monomial::one(self.dim()), c)
    }

    pub fn basis_elt(&self, i: usize) -> UElt {
        let mut m = Monomial::one(self.dim());
        m.0[i] = 1;
        UElt::monomial(m, Q::one())
    }

    /// Embeds a Lie algebra element.
    pub fn lie_elt(&self, x: &[Q]) -> UElt {
        let mut u = UElt::zero();
        for (i, c) in x.iter().enumerate() {
            u = u.add(&self.basis_elt(i).scale(c));
        }
        u
    }

    /// Product of basis elements in the given order.
    pub fn word(&self, letters: &[usize]) -> UElt {
        letters
            .iter()
            .fold(self.one(), |acc, i| self.mul(&acc, &self.basis_elt(*i)))
    }

    /// `m · x_i` in normal form.
    fn mul_monomial_letter(&self, m: &Monomial, i: usize) -> UElt {
        let key = (m.clone(), i);
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let result = match m.last_letter() {
            Some(j) if j > i => {
                let mut prefix = m.clone();
                prefix.0[j] -= 1;
                // m' x_j x_i = (m' x_i) x_j + m' [x_j, x_i]
                let swapped = self.mul_elt_letter(&self.mul_monomial_letter(&prefix, i), j);
                let mut br = UElt::zero();
                for (k, c) in self.g.bracket_basis(j, i).iter().enumerate() {
                    if !c.is_zero() {
                        br = br.add(&self.mul_monomial_letter(&prefix, k).scale(c));
                    }
                }
                swapped.add(&br)
            }
            _ => {
                let mut n = m.clone();
                n.0[i] += 1;
                UElt::monomial(n, Q::one())
            }
        };
        self.memo.borrow_mut().insert(key, result.clone());
        result
    }

    fn mul_elt_letter(&self, a: &UElt, i: usize) -> UElt {
        let mut r = UElt::zero();
        for (m, c) in a.terms() {
            r = r.add(&self.mul_monomial_letter(m, i).scale(c));
        }
        r
    }

    pub fn mul(&self, a: &UElt, b: &UElt) -> UElt {
        let mut r = UElt::zero();
        for (m, c) in b.terms() {
            let mut part = a.clone();
            for i in m.letters() {
                part = self.mul_elt_letter(&part, i);
            }
            r = r.add(&part.scale(c));
        }
        r
    }

    pub fn commutator(&self, a: &UElt, b: &UElt) -> UElt {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// The principal anti-automorphism, `ξ ↦ -ξ` on `g`.
    pub fn antipode(&self, a: &UElt) -> UElt {
        let mut r = UElt::zero();
        for (m, c) in a.terms() {
            let letters = m.letters();
            let sign = if letters.len() % 2 == 0 { Q::one() } else { -Q::one() };
            let rev: Vec<usize> = letters.into_iter().rev().collect();
            r = r.add(&self.word(&rev).scale(&(c * sign)));
        }
        r
    }

    /// All monomials of total degree at most `p`.
    pub fn monomials_up_to(&self, p: u32) -> Vec<Monomial> {
        monomials_up_to(self.dim(), p)
    }
}

/// Exponent vectors of length `dim` with sum at most `p`.
pub fn monomials_up_to(dim: usize, p: u32) -> Vec<Monomial> {
    fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == dim {
            out.push(Monomial(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(dim, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, p, &mut Vec::new(), &mut out);
    out.sort_by_key(Monomial::degree);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use crate::liealg::{direct_sum, sl2};
    use num_integer::binomial;
    use proptest::prelude::*;

    fn u() -> Enveloping {
        Enveloping::new(sl2())
    }

    #[test]
    fn basic_products() {
        let u = u();
        let (e, h, f) = (u.basis_elt(0), u.basis_elt(1), u.basis_elt(2));
        assert_eq!(u.mul(&f, &e), u.word(&[0, 2]).sub(&h));
        assert_eq!(u.mul(&h, &e), u.word(&[0, 1]).add(&e.scale(&q(2))));
        for i in 0..3 {
            for j in 0..3 {
                let lhs = u.commutator(&u.basis_elt(i), &u.basis_elt(j));
                assert_eq!(lhs, u.lie_elt(u.lie().bracket_basis(i, j)));
            }
        }
    }

    #[test]
    fn degrees() {
        let u = u();
        assert_eq!(u.one().filtration_degree(), 0);
        assert_eq!(u.word(&[0, 1, 2]).filtration_degree(), 3);
        assert_eq!(u.word(&[0, 2]).sub(&u.basis_elt(1)).filtration_degree(), 2);
        for p in 0..5u32 {
            assert_eq!(
                u.monomials_up_to(p).len() as i64,
                binomial(i64::from(p) + 3, 3)
            );
        }
    }

    #[test]
    fn antipode_examples() {
        let u = u();
        assert_eq!(u.antipode(&u.basis_elt(0)), u.basis_elt(0).scale(&q(-1)));
        let ef = u.word(&[0, 2]);
        assert_eq!(u.antipode(&ef), ef.sub(&u.basis_elt(1)));
    }

    #[test]
    fn direct_sum_commutes_across_factors() {
        let g = direct_sum(&sl2(), &sl2());
        let u = Enveloping::new(g);
        let a = u.basis_elt(2);
        let b = u.basis_elt(3);
        assert_eq!(u.mul(&a, &b), u.mul(&b, &a));
    }

    fn elt() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
        prop::collection::vec((prop::collection::vec(0usize..3, 0..3), -3i64..4), 1..3)
    }

    fn build(u: &Enveloping, spec: &[(Vec<usize>, i64)]) -> UElt {
        spec.iter()
            .fold(UElt::zero(), |acc, (w, c)| acc.add(&u.word(w).scale(&q(*c))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn associative(a in elt(), b in elt(), c in elt()) {
            let u = u();
            let (a, b, c) = (build(&u, &a), build(&u, &b), build(&u, &c));
            prop_assert_eq!(u.mul(&u.mul(&a, &b), &c), u.mul(&a, &u.mul(&b, &c)));
        }

        #[test]
        fn antipode_reverses(a in elt(), b in elt()) {
            let u = u();
            let (a, b) = (build(&u, &a), build(&u, &b));
            prop_assert_eq!(u.antipode(&u.mul(&a, &b)), u.mul(&u.antipode(&b), &u.antipode(&a)));
            prop_assert_eq!(u.antipode(&u.antipode(&a)), a);
        }

        #[test]
        fn degree_is_subadditive(a in elt(), b in elt()) {
            let u = u();
            let (a, b) = (build(&u, &a), build(&u, &b));
            let p = u.mul(&a, &b);
            prop_assert!(p.is_zero() || p.filtration_degree() <= a.filtration_degree() + b.filtration_degree());
        }
    }
}
