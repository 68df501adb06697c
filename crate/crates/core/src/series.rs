//! Truncated power series in graded variables `T_1..T_n`.
//!
//! Monomials are stored normal-ordered (`T_1^a1 T_2^a2 ...`). Odd variables
//! anticommute, so products pick up a sign whenever an odd variable of the
//! right factor moves left past an odd variable of higher index.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

pub const MAX_VARS: usize = 15;
pub const MAX_DEGREE: usize = 15;

/// The graded variables attached to an algebra's zero modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    parities: Vec<Parity>,
    names: Vec<String>,
    odd: Vec<usize>,
}

pub type VarsRef = Arc<Vars>;

impl Vars {
    pub fn new(parities: Vec<Parity>, names: Vec<String>) -> Result<VarsRef> {
        if parities.len() > MAX_VARS {
            return Err(Error::Input(format!("at most {MAX_VARS} variables supported, got {}", parities.len())));
        }
        if names.len() != parities.len() {
            return Err(Error::Shape("variable names and parities differ in length".into()));
        }
        let odd = (0..parities.len()).filter(|&i| parities[i].is_odd()).collect();
        Ok(Arc::new(Vars { parities, names, odd }))
    }

    pub fn even(n: usize) -> VarsRef {
        Vars::new(vec![Parity::Even; n], (1..=n).map(|i| format!("T{i}")).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.parities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parities.is_empty()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn all_even(&self) -> bool {
        self.odd.is_empty()
    }

    /// Bitset of the odd variables present in `m` (bit i for variable i).
    fn odd_bits(&self, m: Mono) -> u32 {
        let mut b = 0u32;
        for &i in &self.odd {
            if m.exp(i) > 0 {
                b |= 1 << i;
            }
        }
        b
    }

    pub fn mono_parity(&self, m: Mono) -> Parity {
        Parity::from_bit((self.odd_bits(m).count_ones() % 2) as u8)
    }

    /// Sign and product of two normal-ordered monomials, or `None` when an odd
    /// variable repeats.
    pub fn mono_mul(&self, a: Mono, b: Mono) -> Option<(bool, Mono)> {
        let oa = self.odd_bits(a);
        let ob = self.odd_bits(b);
        if oa & ob != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = ob;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (oa >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((swaps % 2 == 1, a.mul(b)))
    }

    /// Checks that `s` only uses declared variables and odd exponents at most 1.
    pub fn check(&self, s: &Series) -> Result<()> {
        for m in s.terms.keys() {
            for i in 0..MAX_VARS {
                let e = m.exp(i);
                if e > 0 && i >= self.len() {
                    return Err(Error::Input(format!("monomial uses undeclared variable {i}")));
                }
                if e > 1 && i < self.len() && self.parities[i].is_odd() {
                    return Err(Error::Input(format!("odd variable {} squared", self.names[i])));
                }
            }
        }
        Ok(())
    }
}

/// Normal-ordered monomial: total degree plus exponents packed 4 bits per
/// variable, variable 0 in the most significant nibble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u8,
    packed: u64,
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, packed: 0 };

    fn shift(i: usize) -> u32 {
        (4 * (MAX_VARS - i)) as u32
    }

    pub fn var(i: usize) -> Mono {
        assert!(i < MAX_VARS);
        Mono { deg: 1, packed: 1u64 << Mono::shift(i) }
    }

    pub fn from_exps(exps: &[u8]) -> Mono {
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            assert!(i < MAX_VARS && (e as usize) <= MAX_DEGREE);
            m.packed |= (e as u64) << Mono::shift(i);
            m.deg += e;
        }
        m
    }

    pub fn exp(self, i: usize) -> u8 {
        ((self.packed >> Mono::shift(i)) & 0xf) as u8
    }

    pub fn exps(self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> usize {
        self.deg as usize
    }

    fn mul(self, other: Mono) -> Mono {
        debug_assert!((self.deg as usize + other.deg as usize) <= MAX_DEGREE);
        Mono { deg: self.deg + other.deg, packed: self.packed + other.packed }
    }

    fn without(self, i: usize) -> Mono {
        Mono { deg: self.deg - 1, packed: self.packed - (1u64 << Mono::shift(i)) }
    }
}

/// A truncated graded power series; absent monomials are zero.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Series {
    terms: BTreeMap<Mono, Scalar>,
}

impl Series {
    pub fn zero() -> Series {
        Series::default()
    }

    pub fn constant(c: Scalar) -> Series {
        let mut s = Series::zero();
        s.add_term(Mono::ONE, c);
        s
    }

    pub fn one() -> Series {
        Series::constant(Scalar::one())
    }

    pub fn monomial(m: Mono, c: Scalar) -> Series {
        let mut s = Series::zero();
        s.add_term(m, c);
        s
    }

    pub fn var(i: usize) -> Series {
        Series::monomial(Mono::var(i), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(Mono::ONE)
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Series) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Series) {
        for (m, c) in &other.terms {
            self.add_term(*m, -c.clone());
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn sub(&self, other: &Series) -> Series {
        let mut s = self.clone();
        s.sub_assign(other);
        s
    }

    pub fn neg(&self) -> Series {
        Series { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Series {
        if k.is_zero() {
            return Series::zero();
        }
        Series { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn truncate(&self, d: usize) -> Series {
        Series { terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Homogeneous component of total degree `k`.
    pub fn part(&self, k: usize) -> Series {
        Series { terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest monomial in the canonical order (lowest total degree first).
    pub fn leading(&self) -> Option<(Mono, Scalar)> {
        self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
    }

    /// Parity of the series given variable parities: `None` for mixed.
    pub fn parity(&self, vars: &Vars) -> Option<Parity> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = vars.mono_parity(*m);
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    /// Negates the odd monomials: the sign from moving the series past an odd element.
    pub fn twist(&self, vars: &Vars) -> Series {
        if vars.all_even() {
            return self.clone();
        }
        Series { terms: self.terms.iter().map(|(m, c)| (*m, if vars.mono_parity(*m).is_odd() { -c.clone() } else { c.clone() })).collect() }
    }

    pub fn twist_if(&self, vars: &Vars, odd: bool) -> Series {
        if odd {
            self.twist(vars)
        } else {
            self.clone()
        }
    }

    /// Left derivative with respect to `T_i`.
    pub fn derivative(&self, vars: &Vars, i: usize) -> Series {
        let mut out = Series::zero();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut k = c * scalar::int(e as i64);
            if vars.parity(i).is_odd() {
                let before = (0..i).filter(|&j| vars.parity(j).is_odd() && m.exp(j) > 0).count();
                if before % 2 == 1 {
                    k = -k;
                }
            }
            out.add_term(m.without(i), k);
        }
        out
    }

    /// Coefficient of `x_{k1}⋯x_{km}` for the listed variables, each taken
    /// exactly once. The listed variables must follow every other variable
    /// present, so that each term reads `(c T^a)·x_{k1}⋯x_{km}` without a sign.
    pub fn multilinear_coefficient(&self, vars: &[usize]) -> Series {
        let mut out = Series::zero();
        'terms: for (m, c) in &self.terms {
            let mut rest = *m;
            for &k in vars {
                if m.exp(k) != 1 {
                    continue 'terms;
                }
                rest = rest.without(k);
            }
            out.add_term(rest, c.clone());
        }
        out
    }

    pub fn to_string_with(&self, vars: &Vars) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut mono = Vec::new();
            for i in 0..vars.len() {
                match m.exp(i) {
                    0 => {}
                    1 => mono.push(vars.name(i).to_string()),
                    e => mono.push(format!("{}^{}", vars.name(i), e)),
                }
            }
            let cs = scalar::format(c);
            if mono.is_empty() {
                parts.push(cs);
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{cs}*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", scalar::format(c))?;
            for i in 0..MAX_VARS {
                match m.exp(i) {
                    0 => {}
                    1 => write!(f, "*T{}", i + 1)?,
                    e => write!(f, "*T{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// Truncated graded product `a·b`, dropping monomials of degree above `d`.
pub fn mul(vars: &Vars, a: &Series, b: &Series, d: usize) -> Series {
    assert!(d <= MAX_DEGREE, "truncation degree {d} exceeds {MAX_DEGREE}");
    let mut out = Series::zero();
    if a.is_zero() || b.is_zero() {
        return out;
    }
    for (ma, ca) in &a.terms {
        if ma.degree() > d {
            continue;
        }
        for (mb, cb) in &b.terms {
            if ma.degree() + mb.degree() > d {
                continue;
            }
            if let Some((neg, m)) = vars.mono_mul(*ma, *mb) {
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
    }
    out
}

/// `series_mul` with explicit variable-set agreement check.
pub fn series_mul(va: &VarsRef, a: &Series, vb: &VarsRef, b: &Series, d: usize) -> Result<Series> {
    if va != vb {
        return Err(Error::Input("series over different variable sets".into()));
    }
    va.check(a)?;
    vb.check(b)?;
    Ok(mul(va, a, b, d))
}
