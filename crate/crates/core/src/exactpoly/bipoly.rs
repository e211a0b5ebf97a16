use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Rational, UniPoly};
use crate::error::{Error, Result};

/// Which outer variable a [`BiPoly`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    /// `t = w²`, the natural variable of the continuant.
    T,
    /// The pencil parameter `w`.
    W,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::W => "w",
        }
    }
}

/// Exact polynomial in `λ` and an outer variable (`t` or `w`).
///
/// `layers[k]` is the coefficient of `outer^k`, itself a polynomial in `λ`.
/// The top layer is nonzero unless the polynomial is zero (no layers).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    layers: Vec<UniPoly>,
    var: Var,
}

impl BiPoly {
    pub fn new(layers: Vec<UniPoly>, var: Var) -> Self {
        let mut p = Self { layers, var };
        p.trim();
        p
    }

    pub fn zero(var: Var) -> Self {
        Self { layers: Vec::new(), var }
    }

    pub fn one(var: Var) -> Self {
        Self::from_lambda(UniPoly::one(), var)
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        Self::from_lambda(UniPoly::constant(c), var)
    }

    /// A polynomial in `λ` alone.
    pub fn from_lambda(p: UniPoly, var: Var) -> Self {
        Self::new(vec![p], var)
    }

    /// `λ + c`.
    pub fn lambda_plus(c: Rational, var: Var) -> Self {
        Self::from_lambda(UniPoly::linear(c), var)
    }

    /// `c * λ^j * outer^k`.
    pub fn monomial(c: Rational, lambda_deg: usize, outer_deg: usize, var: Var) -> Self {
        let mut layers = vec![UniPoly::zero(); outer_deg + 1];
        layers[outer_deg] = UniPoly::monomial(c, lambda_deg);
        Self::new(layers, var)
    }

    /// Build from integer coefficients, `rows[k][j]` = coefficient of `outer^k λ^j`.
    pub fn from_int_rows(rows: &[&[i64]], var: Var) -> Self {
        Self::new(rows.iter().map(|r| UniPoly::from_ints(r)).collect(), var)
    }

    fn trim(&mut self) {
        while self.layers.last().is_some_and(UniPoly::is_zero) {
            self.layers.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn layers(&self) -> &[UniPoly] {
        &self.layers
    }

    pub fn layer(&self, k: usize) -> UniPoly {
        self.layers.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    /// Coefficient of `outer^k λ^j`.
    pub fn coeff(&self, outer_deg: usize, lambda_deg: usize) -> Rational {
        self.layers
            .get(outer_deg)
            .map(|l| l.coeff(lambda_deg))
            .unwrap_or_else(Rational::zero)
    }

    /// Degree in the outer variable; `None` for zero.
    pub fn deg_outer(&self) -> Option<usize> {
        self.layers.len().checked_sub(1)
    }

    /// Degree in `λ`; `None` for zero.
    pub fn deg_lambda(&self) -> Option<usize> {
        self.layers.iter().filter_map(UniPoly::degree).max()
    }

    /// Coefficient of the top `λ` power, as a polynomial in the outer variable.
    pub fn lambda_lead(&self) -> UniPoly {
        match self.deg_lambda() {
            Some(d) => UniPoly::new(self.layers.iter().map(|l| l.coeff(d)).collect()),
            None => UniPoly::zero(),
        }
    }

    pub fn is_monic_in_lambda(&self) -> bool {
        self.lambda_lead() == UniPoly::one()
    }

    /// True when only even outer powers occur.
    pub fn is_even_in_outer(&self) -> bool {
        self.layers.iter().skip(1).step_by(2).all(UniPoly::is_zero)
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::TagMismatch(self.var.name(), other.var.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let len = self.layers.len().max(other.layers.len());
        let layers = (0..len)
            .map(|k| match (self.layers.get(k), other.layers.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => UniPoly::zero(),
            })
            .collect();
        Ok(Self::new(layers, self.var))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            layers: self.layers.iter().map(|l| -l).collect(),
            var: self.var,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut layers = vec![UniPoly::zero(); self.layers.len() + other.layers.len() - 1];
        for (i, a) in self.layers.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.layers.iter().enumerate() {
                if !b.is_zero() {
                    layers[i + j] = &layers[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::new(layers, self.var))
    }

    /// Product of a list (one for the empty list).
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a BiPoly>, var: Var) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(Self::one(var), |acc, f| acc.mul(f))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.layers.iter().map(|l| l.scale(c)).collect(), self.var)
    }

    /// Multiply each layer by a λ-polynomial.
    pub fn mul_lambda(&self, p: &UniPoly) -> Self {
        Self::new(self.layers.iter().map(|l| l * p).collect(), self.var)
    }

    /// Multiply by `outer^k`.
    pub fn shift_outer(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut layers = vec![UniPoly::zero(); k];
        layers.extend(self.layers.iter().cloned());
        Self::new(layers, self.var)
    }

    /// Substitute `λ = v`, leaving a polynomial in the outer variable.
    pub fn eval_lambda(&self, v: &Rational) -> UniPoly {
        UniPoly::new(self.layers.iter().map(|l| l.eval(v)).collect())
    }

    /// Substitute the outer variable, leaving a polynomial in `λ`.
    pub fn eval_outer(&self, v: &Rational) -> UniPoly {
        let mut acc = UniPoly::zero();
        for l in self.layers.iter().rev() {
            acc = &acc.scale(v) + l;
        }
        acc
    }

    /// `∂/∂λ`.
    pub fn derivative_lambda(&self) -> Self {
        Self::new(self.layers.iter().map(UniPoly::derivative).collect(), self.var)
    }

    /// Coefficients of `λ^j` as polynomials in the outer variable.
    pub fn to_lambda_major(&self) -> Vec<UniPoly> {
        let Some(d) = self.deg_lambda() else {
            return Vec::new();
        };
        (0..=d)
            .map(|j| UniPoly::new(self.layers.iter().map(|l| l.coeff(j)).collect()))
            .collect()
    }

    /// Inverse of [`to_lambda_major`](Self::to_lambda_major).
    pub fn from_lambda_major(cols: &[UniPoly], var: Var) -> Self {
        let outer = cols.iter().filter_map(UniPoly::degree).max();
        let Some(outer) = outer else {
            return Self::zero(var);
        };
        let layers = (0..=outer)
            .map(|k| UniPoly::new(cols.iter().map(|c| c.coeff(k)).collect()))
            .collect();
        Self::new(layers, var)
    }

    /// Substitute `t = w²`.
    pub fn to_w_form(&self) -> Result<Self> {
        if self.var != Var::T {
            return Err(Error::TagMismatch("t", self.var.name()));
        }
        let mut layers = Vec::with_capacity(2 * self.layers.len());
        for (k, l) in self.layers.iter().enumerate() {
            if k > 0 {
                layers.push(UniPoly::zero());
            }
            layers.push(l.clone());
        }
        Ok(Self::new(layers, Var::W))
    }

    /// Inverse of [`to_w_form`](Self::to_w_form); fails when an odd power of
    /// `w` occurs.
    pub fn to_t_form(&self) -> Result<Self> {
        if self.var != Var::W {
            return Err(Error::TagMismatch("w", self.var.name()));
        }
        if !self.is_even_in_outer() {
            return Err(Error::Precondition("polynomial is not even in w".into()));
        }
        Ok(Self::new(self.layers.iter().step_by(2).cloned().collect(), Var::T))
    }

    /// Same coefficients, different tag. Use only when the caller knows the
    /// outer variable is being renamed on purpose.
    pub fn retag(&self, var: Var) -> Self {
        Self { layers: self.layers.clone(), var }
    }

    /// Exact division by a polynomial whose top `λ` coefficient is a nonzero
    /// rational constant.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_tag(divisor)?;
        let dcols = divisor.to_lambda_major();
        let Some(lead) = dcols.last() else {
            return Err(Error::DivisionByZero);
        };
        if !lead.is_constant() {
            return Err(Error::Precondition(
                "divisor must have a constant leading λ-coefficient".into(),
            ));
        }
        let inv = lead.coeff(0).recip();
        let dd = dcols.len() - 1;
        let mut rem = self.to_lambda_major();
        if rem.len() <= dd {
            if self.is_zero() {
                return Ok(Self::zero(self.var));
            }
            return Err(Error::InexactDivision(format!("{self} / {divisor}")));
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].scale(&inv);
            if !c.is_zero() {
                for (i, d) in dcols.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(Error::InexactDivision(format!("{self} / {divisor}")));
        }
        Ok(Self::from_lambda_major(&quot, self.var))
    }

    /// Nested coefficient lists `[outer power][λ power]` as canonical strings.
    pub fn to_nested(&self) -> Vec<Vec<String>> {
        self.layers
            .iter()
            .map(|l| l.coeffs().iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_nested(rows: &[Vec<String>], var: Var) -> Result<Self> {
        let layers = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
                    .map(UniPoly::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(layers, var))
    }

    pub fn to_doc(&self) -> PolyDoc {
        PolyDoc {
            form: self.var,
            coeffs: self.to_nested(),
            text: self.to_string(),
        }
    }
}

/// Serialized form of a [`BiPoly`]: `coeffs[k][j]` is the coefficient of
/// `outer^k λ^j`. `text` is a human-readable rendering and is ignored by
/// [`PolyDoc::to_poly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub form: Var,
    pub coeffs: Vec<Vec<String>>,
    #[serde(default)]
    pub text: String,
}

impl PolyDoc {
    pub fn to_poly(&self) -> Result<BiPoly> {
        BiPoly::from_nested(&self.coeffs, self.form)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let outer = self.var.name();
        let dl = self.deg_lambda().unwrap_or(0);
        let mut first = true;
        for j in (0..=dl).rev() {
            for k in 0..self.layers.len() {
                let c = self.coeff(k, j);
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = c.abs();
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                let mut mono = Vec::new();
                match j {
                    0 => {}
                    1 => mono.push("λ".to_string()),
                    _ => mono.push(format!("λ^{j}")),
                }
                match k {
                    0 => {}
                    1 => mono.push(outer.to_string()),
                    _ => mono.push(format!("{outer}^{k}")),
                }
                if mono.is_empty() {
                    f.write_str(&format_rational(&mag))?;
                } else if mag.is_one() {
                    f.write_str(&mono.join("*"))?;
                } else {
                    write!(f, "{}*{}", format_rational(&mag), mono.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{}]({self})", self.var.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn lam(var: Var) -> BiPoly {
        BiPoly::monomial(rat(1), 1, 0, var)
    }

    #[test]
    fn add_examples() {
        let l = lam(Var::T);
        assert!(l.add(&l.neg()).unwrap().is_zero());
        let t = BiPoly::monomial(rat(1), 0, 1, Var::T);
        let s = l.add(&t).unwrap().add(&l).unwrap();
        assert_eq!(s, BiPoly::from_int_rows(&[&[0, 2], &[1]], Var::T));
    }

    #[test]
    fn tag_mismatch_is_error() {
        let a = lam(Var::T);
        let b = lam(Var::W);
        assert!(matches!(a.add(&b), Err(Error::TagMismatch(..))));
        assert!(matches!(a.mul(&b), Err(Error::TagMismatch(..))));
    }

    #[test]
    fn mul_examples() {
        let p = BiPoly::lambda_plus(rat(1), Var::T);
        let q = BiPoly::lambda_plus(rat(-1), Var::T);
        assert_eq!(p.mul(&q).unwrap(), BiPoly::from_int_rows(&[&[-1, 0, 1]], Var::T));
        let one = BiPoly::one(Var::T);
        assert_eq!(p.mul(&one).unwrap(), p);
        // λ⁴ − 14λ²t + 9t² = (λ² − 7t)² − 40t²
        let lhs = BiPoly::from_int_rows(&[&[0, 0, 0, 0, 1], &[0, 0, -14], &[9]], Var::T);
        let sq = BiPoly::from_int_rows(&[&[0, 0, 1], &[-7]], Var::T);
        let rhs = sq
            .mul(&sq)
            .unwrap()
            .sub(&BiPoly::monomial(rat(40), 0, 2, Var::T))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_and_forms() {
        // λ² + λ − t
        let p = BiPoly::from_int_rows(&[&[0, 1, 1], &[-1]], Var::T);
        assert_eq!(p.eval_lambda(&rat(0)), UniPoly::from_ints(&[0, -1]));
        let w = p.to_w_form().unwrap();
        assert_eq!(w, BiPoly::from_int_rows(&[&[0, 1, 1], &[], &[-1]], Var::W));
        assert_eq!(w.to_t_form().unwrap(), p);
        assert!(BiPoly::from_int_rows(&[&[1], &[1]], Var::W).to_t_form().is_err());
        assert_eq!(BiPoly::one(Var::T).to_w_form().unwrap(), BiPoly::one(Var::W));
    }

    #[test]
    fn exact_division() {
        let a = BiPoly::from_int_rows(&[&[0, 1, 1], &[-1]], Var::T);
        let b = BiPoly::lambda_plus(rat(3), Var::T);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn nested_round_trip_and_display() {
        let p = BiPoly::from_int_rows(&[&[2, 3, 1], &[-9]], Var::W);
        let doc = p.to_doc();
        assert_eq!(doc.coeffs, vec![vec!["2", "3", "1"], vec!["-9"]]);
        assert_eq!(doc.to_poly().unwrap(), p);
        assert_eq!(p.to_string(), "λ^2 + 3*λ + 2 - 9*w");
    }
}
