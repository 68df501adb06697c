//! Cyclic Hodge dGBV algebras: loading, derived operators and products.

mod search;
mod spec;
mod validate;

pub use search::{search_fixture, Profile, SearchOutcome};
pub use spec::AlgebraSpec;
pub use validate::{check_three_q, satisfies_one_twelfth, validate_algebra};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, operator_to_bivector, Bivector, SuperOperator, SuperSpace, SuperVector};
use crate::scalar::{self, Scalar};
use crate::series::{self, Parity, Series, Vars, VarsRef};

/// The structure data plus the operators derived from the Hodge decomposition.
#[derive(Clone, Debug)]
pub struct ChAlgebra {
    pub space: SuperSpace,
    /// `mul[i][j]` lists `(k, c)` with `e_i·e_j = Σ c e_k`.
    pub mul: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub q: SuperOperator,
    pub gm: SuperOperator,
    pub h0: Vec<usize>,
    pub blocks: Vec<[usize; 4]>,
    pub integral: Vec<Scalar>,
    pub gp: SuperOperator,
    pub pi0: SuperOperator,
    pub pi4: SuperOperator,
    pub j: SuperOperator,
    /// `(e_i, e_j) = ∫e_i e_j` on all of `H`.
    pub gram: Vec<Vec<Scalar>>,
    pub gram_inv: Option<Vec<Vec<Scalar>>>,
    /// One variable per zero mode, in `h0` order, with the zero mode's parity.
    pub vars: VarsRef,
}

impl ChAlgebra {
    pub fn from_json(text: &str) -> Result<ChAlgebra> {
        ChAlgebra::from_spec(&AlgebraSpec::from_json(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<ChAlgebra> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        ChAlgebra::from_json(&text)
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<ChAlgebra> {
        let n = spec.dimension;
        if n == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if spec.parities.len() != n || spec.labels.len() != n || spec.integral.len() != n {
            return Err(Error::Shape("parities, labels and integral must have one entry per basis vector".into()));
        }
        if let Some(p) = spec.parities.iter().find(|&&p| p > 1) {
            return Err(Error::Shape(format!("parity must be 0 or 1, got {p}")));
        }
        let parities: Vec<Parity> = spec.parities.iter().map(|&b| Parity::from_bit(b)).collect();
        let space = SuperSpace::new(parities.clone(), spec.labels.clone())?;
        let check_idx = |what: &str, i: usize| -> Result<()> {
            if i >= n {
                Err(Error::Shape(format!("{what}: index {i} out of range for dimension {n}")))
            } else {
                Ok(())
            }
        };

        let mut mul = vec![vec![Vec::<(usize, Scalar)>::new(); n]; n];
        for (idx, (i, j, k, c)) in spec.multiplication.iter().enumerate() {
            for x in [*i, *j, *k] {
                check_idx(&format!("multiplication[{idx}]"), x)?;
            }
            if parities[*i].add(parities[*j]) != parities[*k] {
                return Err(Error::Shape(format!(
                    "multiplication[{idx}]: {}·{} → {} violates parity",
                    spec.labels[*i], spec.labels[*j], spec.labels[*k]
                )));
            }
            let c = AlgebraSpec::rational("multiplication", idx, c)?;
            let slot = &mut mul[*i][*j];
            match slot.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, v)) => *v += c,
                None => slot.push((*k, c)),
            }
        }
        for row in mul.iter_mut() {
            for slot in row.iter_mut() {
                slot.retain(|(_, c)| !c.is_zero());
                slot.sort_by_key(|(k, _)| *k);
            }
        }

        let op = |name: &str, entries: &[(usize, usize, String)]| -> Result<SuperOperator> {
            let mut e = Vec::new();
            for (idx, (i, j, c)) in entries.iter().enumerate() {
                check_idx(&format!("{name}[{idx}]"), *i)?;
                check_idx(&format!("{name}[{idx}]"), *j)?;
                let c = AlgebraSpec::rational(name, idx, c)?;
                if !c.is_zero() && parities[*i] == parities[*j] {
                    return Err(Error::Shape(format!(
                        "{name}[{idx}]: odd operator maps {} to {} of equal parity",
                        spec.labels[*j], spec.labels[*i]
                    )));
                }
                e.push((*i, *j, c));
            }
            Ok(SuperOperator::from_constants(n, Parity::Odd, &e))
        };
        let q = op("Q", &spec.q)?;
        let gm = op("Gminus", &spec.gminus)?;

        let mut seen = vec![false; n];
        for &i in &spec.h0 {
            check_idx("h0", i)?;
            if seen[i] {
                return Err(Error::Shape(format!("h0: index {i} repeated")));
            }
            seen[i] = true;
        }
        for (b, blk) in spec.blocks.iter().enumerate() {
            for &i in blk {
                check_idx(&format!("blocks[{b}]"), i)?;
                if seen[i] {
                    return Err(Error::Shape(format!(
                        "blocks[{b}]: index {i} reused, the four block vectors must be independent basis vectors"
                    )));
                }
                seen[i] = true;
            }
            let [e, qe, ge, qge] = *blk;
            let pe = parities[e];
            if parities[qe] == pe || parities[ge] == pe || parities[qge] != pe {
                return Err(Error::Shape(format!("blocks[{b}]: parities of (e, Qe, G₋e, QG₋e) must be (p, p+1, p+1, p)")));
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Shape(format!("basis vector {i} is neither in h0 nor in a block")));
        }

        let mut integral = Vec::with_capacity(n);
        for (idx, c) in spec.integral.iter().enumerate() {
            let c = AlgebraSpec::rational("integral", idx, c)?;
            if !c.is_zero() && parities[idx].is_odd() {
                return Err(Error::Shape(format!("integral must be even, but ∫{} ≠ 0", spec.labels[idx])));
            }
            integral.push(c);
        }

        let mut gp_e = Vec::new();
        for &[e, qe, ge, qge] in &spec.blocks {
            gp_e.push((e, qe, Scalar::one()));
            gp_e.push((ge, qge, Scalar::one()));
        }
        let gp = SuperOperator::from_constants(n, Parity::Odd, &gp_e);
        let vars0 = Vars::even(0);
        let pi4 = q.compose(&vars0, &gp, 0).add(&gp.compose(&vars0, &q, 0));
        let pi0 = SuperOperator::identity(n).sub(&pi4);
        let j = SuperOperator::parity_operator(&space);

        let vars =
            Vars::new(spec.h0.iter().map(|&i| parities[i]).collect(), spec.h0.iter().map(|&i| format!("T_{}", spec.labels[i])).collect())?;

        let mut alg = ChAlgebra {
            space,
            mul,
            q,
            gm,
            h0: spec.h0.clone(),
            blocks: spec.blocks.clone(),
            integral,
            gp,
            pi0,
            pi4,
            j,
            gram: Vec::new(),
            gram_inv: None,
            vars,
        };
        alg.gram = (0..n).map(|i| (0..n).map(|k| alg.integral_of_product_basis(i, k)).collect()).collect();
        alg.gram_inv = linalg::invert(&alg.gram);
        Ok(alg)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let n = self.dim();
        let mut multiplication = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.mul[i][j] {
                    multiplication.push((i, j, *k, scalar::format(c)));
                }
            }
        }
        let entries = |a: &SuperOperator| {
            let mut v = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let c = a.get(i, j).constant_term();
                    if !c.is_zero() {
                        v.push((i, j, scalar::format(&c)));
                    }
                }
            }
            v
        };
        AlgebraSpec {
            dimension: n,
            parities: self.space.parities().iter().map(|p| p.bit()).collect(),
            labels: self.space.labels().to_vec(),
            multiplication,
            q: entries(&self.q),
            gminus: entries(&self.gm),
            h0: self.h0.clone(),
            blocks: self.blocks.clone(),
            integral: self.integral.iter().map(scalar::format).collect(),
        }
    }

    /// The same algebra over the variables `T` followed by extra variables
    /// with the given parities; returns the indices of the new variables.
    pub fn with_extra_vars(&self, parities: &[Parity], prefix: &str) -> Result<(ChAlgebra, Vec<usize>)> {
        let base = self.vars.len();
        let mut ps = self.vars.parities().to_vec();
        let mut names: Vec<String> = (0..base).map(|i| self.vars.name(i).to_string()).collect();
        for (k, &p) in parities.iter().enumerate() {
            ps.push(p);
            names.push(format!("{prefix}{}", k + 1));
        }
        let mut alg = self.clone();
        alg.vars = Vars::new(ps, names)?;
        Ok((alg, (base..base + parities.len()).collect()))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    fn integral_of_product_basis(&self, i: usize, k: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (l, c) in &self.mul[i][k] {
            acc += c * &self.integral[*l];
        }
        acc
    }

    pub fn eta_inverse(&self) -> Result<&Vec<Vec<Scalar>>> {
        self.gram_inv.as_ref().ok_or_else(|| Error::InvalidAlgebra("scalar product (a,b) = ∫ab is degenerate".into()))
    }

    /// Gram matrix restricted to the zero modes, in `h0` order.
    pub fn eta0(&self) -> Vec<Vec<Scalar>> {
        self.h0.iter().map(|&i| self.h0.iter().map(|&k| self.gram[i][k].clone()).collect()).collect()
    }

    /// Inverse of [`ChAlgebra::eta0`].
    pub fn eta0_inverse(&self) -> Result<Vec<Vec<Scalar>>> {
        linalg::invert(&self.eta0()).ok_or_else(|| Error::InvalidAlgebra("scalar product is degenerate on H₀".into()))
    }

    pub fn has_odd_zero_modes(&self) -> bool {
        !self.vars.all_even()
    }

    /// `E = Σ_a e_{h0[a]} T_a`.
    pub fn e_vector(&self) -> SuperVector {
        let mut v = SuperVector::zero(self.dim());
        for (a, &i) in self.h0.iter().enumerate() {
            v.0[i] = Series::var(a);
        }
        v
    }

    /// Product of two vectors with right coefficients:
    /// `(Σ e_i a^i)(Σ e_j b^j) = Σ e_i e_j (±a^i) b^j`, the sign from moving `a^i` past `e_j`.
    pub fn mul(&self, a: &SuperVector, b: &SuperVector, d: usize) -> SuperVector {
        let n = self.dim();
        let vars = &*self.vars;
        let mut out = SuperVector::zero(n);
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            let mut tw: Option<Series> = None;
            for j in 0..n {
                if b.0[j].is_zero() || self.mul[i][j].is_empty() {
                    continue;
                }
                let ai = if self.parity(j).is_odd() { tw.get_or_insert_with(|| a.0[i].twist(vars)).clone() } else { a.0[i].clone() };
                let prod = series::mul(vars, &ai, &b.0[j], d);
                if prod.is_zero() {
                    continue;
                }
                for (k, c) in &self.mul[i][j] {
                    out.0[*k].add_assign(&prod.scale(c));
                }
            }
        }
        out
    }

    /// Product of several vectors, associated from the left.
    pub fn product(&self, factors: &[&SuperVector], d: usize) -> SuperVector {
        let mut acc = match factors.first() {
            Some(f) => (*f).clone(),
            None => return self.unit_vector(),
        };
        for f in &factors[1..] {
            acc = self.mul(&acc, f, d);
        }
        acc
    }

    /// The unit, found by solving `u·e_j = e_j`; falls back to zero if none exists.
    pub fn unit_vector(&self) -> SuperVector {
        let n = self.dim();
        for i in 0..n {
            let ok = (0..n).all(|j| self.mul[i][j] == vec![(j, Scalar::one())] && self.mul[j][i] == vec![(j, Scalar::one())]);
            if ok {
                return SuperVector::basis(n, i);
            }
        }
        SuperVector::zero(n)
    }

    /// The left multiplication operator `L_x(h) = x·h`.
    pub fn left_mul_op(&self, x: &SuperVector, d: usize) -> SuperOperator {
        let n = self.dim();
        let vars = &*self.vars;
        let parity = x.parity_of(&self.space, vars).unwrap_or(Parity::Even);
        let mut op = SuperOperator::zero(n, parity);
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            let tw = x.0[i].twist(vars);
            for j in 0..n {
                let xi = if self.parity(j).is_odd() { &tw } else { &x.0[i] };
                for (k, c) in &self.mul[i][j] {
                    let mut s = op.get(*k, j).clone();
                    s.add_assign(&xi.scale(c));
                    op.set(*k, j, s.truncate(d));
                }
            }
        }
        op
    }

    /// `∫ Σ e_i v^i = Σ ∫(e_i) v^i`.
    pub fn integrate(&self, v: &SuperVector) -> Series {
        let mut acc = Series::zero();
        for (i, c) in self.integral.iter().enumerate() {
            if !c.is_zero() && !v.0[i].is_zero() {
                acc.add_assign(&v.0[i].scale(c));
            }
        }
        acc
    }

    /// The vertex form `m_k(a_1, …, a_k) = ∫a_1⋯a_k`.
    pub fn vertex(&self, factors: &[&SuperVector], d: usize) -> Series {
        self.integrate(&self.product(factors, d))
    }

    pub fn apply(&self, op: &SuperOperator, v: &SuperVector, d: usize) -> SuperVector {
        op.apply(&self.vars, v, d)
    }

    pub fn compose(&self, a: &SuperOperator, b: &SuperOperator, d: usize) -> SuperOperator {
        a.compose(&self.vars, b, d)
    }

    /// `G₋G₊`.
    pub fn propagator(&self) -> SuperOperator {
        self.gm.compose(&self.vars, &self.gp, 0)
    }

    pub fn bivector(&self, op: &SuperOperator) -> Result<Bivector> {
        Ok(operator_to_bivector(op, self.eta_inverse()?))
    }

    /// Named propagator bivectors `[G₋G₊]`, `[JG₋G₊]`, `[Π₀]`, `[G₋]`, `[J]`, `[Id]`.
    pub fn named_bivectors(&self) -> Result<Vec<(&'static str, Bivector)>> {
        let v = &self.vars;
        let k = self.propagator();
        Ok(vec![
            ("[G-G+]", self.bivector(&k)?),
            ("[JG-G+]", self.bivector(&self.j.compose(v, &k, 0))?),
            ("[Pi0]", self.bivector(&self.pi0)?),
            ("[G-]", self.bivector(&self.gm)?),
            ("[J]", self.bivector(&self.j)?),
            ("[Id]", self.bivector(&SuperOperator::identity(self.dim()))?),
        ])
    }

    /// The two-form `ω(x, y) = ∫x·a·y` on basis vectors.
    pub fn two_form_with(&self, a: &SuperVector, d: usize) -> Vec<Vec<Series>> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| {
                        let x = SuperVector::basis(n, k);
                        let y = SuperVector::basis(n, l);
                        self.vertex(&[&x, a, &y], d)
                    })
                    .collect()
            })
            .collect()
    }

    /// Human-readable rendering of a vector.
    pub fn show(&self, v: &SuperVector) -> String {
        let mut parts = Vec::new();
        for (i, s) in v.0.iter().enumerate() {
            if !s.is_zero() {
                parts.push(format!("{}·({})", self.label(i), s.to_string_with(&self.vars)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn series_string(&self, s: &Series) -> String {
        s.to_string_with(&self.vars)
    }
}

/// Basis vector as a constant vector.
pub fn basis(alg: &ChAlgebra, i: usize) -> SuperVector {
    SuperVector::basis(alg.dim(), i)
}
