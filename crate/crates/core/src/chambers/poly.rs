//! Sparse multivariate polynomials and parity quasipolynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

/// `Σ c_e x^e`, exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, F::one());
        p
    }

    /// `Σ coeffs[i] x_i + constant`.
    pub fn linear(coeffs: &[i64], constant: i64) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, F::from_i64(constant));
        for (i, &c) in coeffs.iter().enumerate() {
            p = p.add(&Self::var(n, i).scale(&F::from_i64(c)));
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: F) {
        assert_eq!(e.len(), self.nvars, "exponent length");
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn eval(&self, x: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_int(&self, x: &[i64]) -> F {
        let xf: Vec<F> = x.iter().map(|&v| F::from_i64(v)).collect();
        self.eval(&xf)
    }

    /// Replace each variable by a polynomial in a new set of variables.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Self {
        let n = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(n, c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(img);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Monomial label such as `y1^2*k`; `1` for the constant.
    pub fn monomial_name(e: &[u32], names: &[String]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Monomial label to coefficient, in a deterministic order.
    pub fn named_terms(&self, names: &[String]) -> BTreeMap<String, String> {
        self.terms.iter().map(|(e, c)| (Self::monomial_name(e, names), c.to_string())).collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { p: self, names }
    }
}

struct Named<'a, F> {
    p: &'a Polynomial<F>,
    names: &'a [String],
}

impl<F: Field> fmt::Display for Named<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // highest degree first
        let mut terms: Vec<(&Vec<u32>, &F)> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let name = Polynomial::<F>::monomial_name(e, self.names);
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            if name == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}*{name}")?;
            }
        }
        Ok(())
    }
}

/// Coset label for modulus 2: one character per coordinate.
pub fn parity_coset(x: &[i64]) -> String {
    x.iter().map(|v| if v.rem_euclid(2) == 1 { '1' } else { '0' }).collect()
}

/// A polynomial per parity coset; missing cosets are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Quasipolynomial<F> {
    nvars: usize,
    pieces: BTreeMap<String, Polynomial<F>>,
    chamber: Option<String>,
}

impl<F: Field> Quasipolynomial<F> {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, pieces: BTreeMap::new(), chamber: None }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn chamber(&self) -> Option<&str> {
        self.chamber.as_deref()
    }

    pub fn attach(&mut self, chamber: impl Into<String>) {
        self.chamber = Some(chamber.into());
    }

    pub fn modulus(&self) -> i64 {
        2
    }

    pub fn set(&mut self, coset: String, p: Polynomial<F>) {
        assert_eq!(coset.len(), self.nvars, "coset length");
        self.pieces.insert(coset, p);
    }

    pub fn piece(&self, coset: &str) -> Option<&Polynomial<F>> {
        self.pieces.get(coset)
    }

    pub fn pieces(&self) -> &BTreeMap<String, Polynomial<F>> {
        &self.pieces
    }

    pub fn eval_int(&self, x: &[i64]) -> F {
        self.pieces.get(&parity_coset(x)).map_or_else(F::zero, |p| p.eval_int(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;

    fn names() -> Vec<String> {
        vec!["y1".into(), "y2".into(), "k".into()]
    }

    #[test]
    fn arithmetic() {
        let p = P::linear(&[1, -5, 0], 11);
        let q = P::var(3, 2);
        let r = p.mul(&q).add(&q);
        assert_eq!(r.total_degree(), Some(2));
        assert_eq!(r.eval_int(&[1, 1, 2]), Rational::from_integer(16.into()));
        assert!(p.sub(&p).is_zero());
        assert_eq!(P::zero(3).total_degree(), None);
        assert_eq!(format!("{}", p.display(&names())), "y1 - 5*y2 + 11");
    }

    #[test]
    fn substitution() {
        // x = -y1 - y2 - k into x + k
        let f = P::linear(&[1, 1], 0);
        let imgs = vec![P::linear(&[-1, -1, -1], 0), P::var(3, 2)];
        assert_eq!(f.substitute(&imgs), P::linear(&[-1, -1, 0], 0));
    }

    #[test]
    fn cosets() {
        let mut q = Quasipolynomial::<Rational>::new(2);
        q.set("11".into(), P::linear(&[1, 1], 0));
        assert_eq!(parity_coset(&[-3, 4]), "10");
        assert_eq!(q.eval_int(&[3, 5]), Rational::from_integer(8.into()));
        assert_eq!(q.eval_int(&[2, 5]), Rational::from_integer(0.into()));
    }
}
