//! Parity-graded vectors and operators with series coefficients.
//!
//! Coefficients sit to the right of basis vectors: a vector is `Σ e_i h^i`
//! and an operator acts by `A(e_j) = Σ_i e_i A_ij`. Operators commute with
//! right multiplication by series, so composition is plain matrix product and
//! `(A h)^i = Σ_j A_ij h^j` with no signs.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{self, Parity, Series, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    parities: Vec<Parity>,
    labels: Vec<String>,
}

impl SuperSpace {
    pub fn new(parities: Vec<Parity>, labels: Vec<String>) -> Result<SuperSpace> {
        if parities.is_empty() {
            return Err(Error::Shape("space must have dimension at least 1".into()));
        }
        if parities.len() != labels.len() {
            return Err(Error::Shape("labels and parities differ in length".into()));
        }
        Ok(SuperSpace { parities, labels })
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// `Σ e_i v[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperVector(pub Vec<Series>);

impl SuperVector {
    pub fn zero(n: usize) -> SuperVector {
        SuperVector(vec![Series::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> SuperVector {
        let mut v = SuperVector::zero(n);
        v.0[i] = Series::one();
        v
    }

    /// `e_i` with coefficient `s`.
    pub fn basis_times(n: usize, i: usize, s: Series) -> SuperVector {
        let mut v = SuperVector::zero(n);
        v.0[i] = s;
        v
    }

    pub fn from_constants(c: &[Scalar]) -> SuperVector {
        SuperVector(c.iter().map(|x| Series::constant(x.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, o: &SuperVector) -> SuperVector {
        SuperVector(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &SuperVector) -> SuperVector {
        SuperVector(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> SuperVector {
        SuperVector(self.0.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, k: &Scalar) -> SuperVector {
        SuperVector(self.0.iter().map(|a| a.scale(k)).collect())
    }

    pub fn truncate(&self, d: usize) -> SuperVector {
        SuperVector(self.0.iter().map(|a| a.truncate(d)).collect())
    }

    pub fn part(&self, k: usize) -> SuperVector {
        SuperVector(self.0.iter().map(|a| a.part(k)).collect())
    }

    /// Right multiplication by a series: `Σ e_i (v^i s)`.
    pub fn mul_series(&self, vars: &Vars, s: &Series, d: usize) -> SuperVector {
        SuperVector(self.0.iter().map(|a| series::mul(vars, a, s, d)).collect())
    }

    /// Total parity (basis parity plus coefficient parity); `None` if mixed.
    pub fn parity_of(&self, space: &SuperSpace, vars: &Vars) -> Option<Parity> {
        let mut p = None;
        for (i, s) in self.0.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let q = s.parity(vars)?.add(space.parity(i));
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    /// First nonzero coordinate with its lowest monomial, for failure reports.
    pub fn first_nonzero(&self) -> Option<(usize, Series)> {
        self.0.iter().enumerate().find(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone()))
    }
}

/// Square matrix of series with a declared parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperOperator {
    n: usize,
    pub parity: Parity,
    m: Vec<Series>,
}

impl SuperOperator {
    pub fn zero(n: usize, parity: Parity) -> SuperOperator {
        SuperOperator { n, parity, m: vec![Series::zero(); n * n] }
    }

    pub fn identity(n: usize) -> SuperOperator {
        let mut a = SuperOperator::zero(n, Parity::Even);
        for i in 0..n {
            a.set(i, i, Series::one());
        }
        a
    }

    /// The parity operator `h ↦ (−1)^h̃ h`.
    pub fn parity_operator(space: &SuperSpace) -> SuperOperator {
        let n = space.dim();
        let mut a = SuperOperator::zero(n, Parity::Even);
        for i in 0..n {
            let s = if space.parity(i).is_odd() { -Scalar::one() } else { Scalar::one() };
            a.set(i, i, Series::constant(s));
        }
        a
    }

    pub fn from_constants(n: usize, parity: Parity, entries: &[(usize, usize, Scalar)]) -> SuperOperator {
        let mut a = SuperOperator::zero(n, parity);
        for (i, j, c) in entries {
            let mut s = a.get(*i, *j).clone();
            s.add_term(series::Mono::ONE, c.clone());
            a.set(*i, *j, s);
        }
        a
    }

    /// Operator whose columns are the given vectors: `A(e_j) = cols[j]`.
    pub fn from_columns(parity: Parity, cols: &[SuperVector]) -> SuperOperator {
        let n = cols.len();
        let mut a = SuperOperator::zero(n, parity);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                a.set(i, j, c.0[i].clone());
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.m[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Series) {
        self.m[i * self.n + j] = s;
    }

    pub fn column(&self, j: usize) -> SuperVector {
        SuperVector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|s| s.is_zero())
    }

    pub fn with_parity(mut self, p: Parity) -> SuperOperator {
        self.parity = p;
        self
    }

    pub fn apply(&self, vars: &Vars, v: &SuperVector, d: usize) -> SuperVector {
        let mut out = SuperVector::zero(self.n);
        for i in 0..self.n {
            let mut acc = Series::zero();
            for j in 0..self.n {
                let a = self.get(i, j);
                if a.is_zero() || v.0[j].is_zero() {
                    continue;
                }
                acc.add_assign(&series::mul(vars, a, &v.0[j], d));
            }
            out.0[i] = acc;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, vars: &Vars, other: &SuperOperator, d: usize) -> SuperOperator {
        let n = self.n;
        let mut out = SuperOperator::zero(n, self.parity.add(other.parity));
        for i in 0..n {
            for k in 0..n {
                let mut acc = Series::zero();
                for j in 0..n {
                    let a = self.get(i, j);
                    let b = other.get(j, k);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc.add_assign(&series::mul(vars, a, b, d));
                }
                out.set(i, k, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &SuperOperator) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().zip(&o.m).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &SuperOperator) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().zip(&o.m).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn truncate(&self, d: usize) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().map(|a| a.truncate(d)).collect() }
    }

    pub fn part(&self, k: usize) -> SuperOperator {
        SuperOperator { n: self.n, parity: self.parity, m: self.m.iter().map(|a| a.part(k)).collect() }
    }

    /// Graded commutator `[A, B] = AB − (−1)^{|A||B|} BA`.
    pub fn commutator(&self, vars: &Vars, o: &SuperOperator, d: usize) -> SuperOperator {
        let ab = self.compose(vars, o, d);
        let ba = o.compose(vars, self, d);
        if self.parity.is_odd() && o.parity.is_odd() {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// First nonzero entry, for failure reports.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Series)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_zero() {
                    return Some((i, j, self.get(i, j).clone()));
                }
            }
        }
        None
    }

    /// Whether every constant entry respects the declared parity.
    pub fn parity_consistent(&self, space: &SuperSpace) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).constant_term().is_zero() && space.parity(i) != space.parity(j).add(self.parity) {
                    return false;
                }
            }
        }
        true
    }
}

/// `str(A) = Σ_i (−1)^{|e_i|(1+|A|)} A_ii`; for even `A` this is `tr(J∘A)`.
pub fn supertrace(space: &SuperSpace, a: &SuperOperator) -> Series {
    let mut acc = Series::zero();
    for i in 0..a.dim() {
        let d = a.get(i, i);
        if space.parity(i).is_odd() && !a.parity.is_odd() {
            acc.sub_assign(d);
        } else {
            acc.add_assign(d);
        }
    }
    acc
}

/// Plain trace `Σ_i A_ii`.
pub fn trace(a: &SuperOperator) -> Series {
    let mut acc = Series::zero();
    for i in 0..a.dim() {
        acc.add_assign(a.get(i, i));
    }
    acc
}

/// Element of `H⊗H`: `Σ_{kl} e_k ⊗ e_l b[k][l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector {
    n: usize,
    m: Vec<Series>,
}

impl Bivector {
    pub fn zero(n: usize) -> Bivector {
        Bivector { n, m: vec![Series::zero(); n * n] }
    }

    pub fn get(&self, k: usize, l: usize) -> &Series {
        &self.m[k * self.n + l]
    }

    pub fn set(&mut self, k: usize, l: usize, s: Series) {
        self.m[k * self.n + l] = s;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add(&self, o: &Bivector) -> Bivector {
        Bivector { n: self.n, m: self.m.iter().zip(&o.m).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Bivector {
        Bivector { n: self.n, m: self.m.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|s| s.is_zero())
    }

    /// `⟨[B], ω⟩ = Σ_{kl} B^{kl} ω(e_k, e_l)` for a two-form given by its values.
    pub fn contract(&self, vars: &Vars, omega: &[Vec<Series>], d: usize) -> Series {
        let mut acc = Series::zero();
        for k in 0..self.n {
            for l in 0..self.n {
                let b = self.get(k, l);
                if b.is_zero() || omega[k][l].is_zero() {
                    continue;
                }
                acc.add_assign(&series::mul(vars, b, &omega[k][l], d));
            }
        }
        acc
    }

    /// Applies an operator to both slots: `Σ A(e_k) ⊗ B(e_l) b^{kl}` for constant `A`, `B`.
    pub fn apply_both(&self, vars: &Vars, a: &SuperOperator, b: &SuperOperator, d: usize) -> Bivector {
        let n = self.n;
        let mut out = Bivector::zero(n);
        for k in 0..n {
            for l in 0..n {
                let x = self.get(k, l);
                if x.is_zero() {
                    continue;
                }
                for i in 0..n {
                    let ai = a.get(i, k);
                    if ai.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let bj = b.get(j, l);
                        if bj.is_zero() {
                            continue;
                        }
                        let t = series::mul(vars, &series::mul(vars, ai, bj, d), x, d);
                        let mut s = out.get(i, j).clone();
                        s.add_assign(&t);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }
}

/// `[A]^{kl} = Σ_m A_lm η^{mk}` with `eta_inv[m][k] = η^{mk}` the inverse Gram matrix.
///
/// With this convention `Σ_{k,l} η_{ul} [A]^{kl} η_{kw} = (e_u, A e_w)`, and
/// contracting `[A]` against `ω(x, y) = ∫x·M(y)` gives `tr(A∘M)`.
pub fn operator_to_bivector(a: &SuperOperator, eta_inv: &[Vec<Scalar>]) -> Bivector {
    let n = a.dim();
    let mut b = Bivector::zero(n);
    for k in 0..n {
        for l in 0..n {
            let mut acc = Series::zero();
            for (m, row) in eta_inv.iter().enumerate() {
                if row[k].is_zero() {
                    continue;
                }
                acc.add_assign(&a.get(l, m).scale(&row[k]));
            }
            b.set(k, l, acc);
        }
    }
    b
}

/// Sign of reordering `x_0..x_{n-1}` into `x_{perm[0]}..x_{perm[n-1]}`, where
/// `parities[i]` is the parity of `x_i`.
pub fn koszul_sign(perm: &[usize], parities: &[Parity]) -> Result<Scalar> {
    let n = perm.len();
    if parities.len() != n {
        return Err(Error::Input("permutation and parity list differ in length".into()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Input(format!("not a permutation: {perm:?}")));
        }
        seen[p] = true;
    }
    let mut neg = false;
    for a in 0..n {
        for b in a + 1..n {
            if perm[a] > perm[b] && parities[perm[a]].is_odd() && parities[perm[b]].is_odd() {
                neg = !neg;
            }
        }
    }
    Ok(crate::scalar::sign(neg))
}

/// Exact inverse of a square rational matrix, `None` if singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Scalar::one() / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact determinant by fraction-free elimination over the rationals.
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn space(p: &[u8]) -> SuperSpace {
        SuperSpace::new(p.iter().map(|&b| Parity::from_bit(b)).collect(), p.iter().map(|b| b.to_string()).collect()).unwrap()
    }

    #[test]
    fn supertrace_examples() {
        let s = space(&[0, 0, 1, 0, 1]);
        let id = SuperOperator::identity(5);
        assert_eq!(supertrace(&s, &id), Series::constant(int(1)));
        let j = SuperOperator::parity_operator(&s);
        assert_eq!(supertrace(&s, &j), Series::constant(int(5)));
    }

    #[test]
    fn koszul_examples() {
        let odd = [Parity::Odd, Parity::Odd];
        let mixed = [Parity::Odd, Parity::Even];
        assert_eq!(koszul_sign(&[0, 1], &odd).unwrap(), int(1));
        assert_eq!(koszul_sign(&[1, 0], &odd).unwrap(), int(-1));
        assert_eq!(koszul_sign(&[1, 0], &mixed).unwrap(), int(1));
        assert!(koszul_sign(&[0, 0], &odd).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&m), int(-1));
        assert_eq!(invert(&m).unwrap(), m);
        let z = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&z), int(0));
        assert!(invert(&z).is_none());
    }

    #[test]
    fn zero_operator_gives_zero_bivector() {
        let eta_inv = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let b = operator_to_bivector(&SuperOperator::zero(2, Parity::Even), &eta_inv);
        assert!(b.is_zero());
        let id = operator_to_bivector(&SuperOperator::identity(2), &eta_inv);
        assert_eq!(id.get(0, 1), &Series::one());
    }
}
