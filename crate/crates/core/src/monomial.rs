//! Exponent vectors, monomial ideals, and the posets of standard monomials
//! they cut out.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Labels, PosetSpec, RankedPoset};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    /// `x_i^k`.
    pub fn power(arity: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; arity];
        v[i] = k;
        ExponentVector(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Multiplies by `x_i`.
    pub fn bumped(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        ExponentVector(v)
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        check_arity(self, other)?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect(),
        ))
    }

    /// Pure power of a single variable, as `(variable, exponent)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &c)| c > 0);
        let (i, &k) = nz.next()?;
        nz.next().is_none().then_some((i, k))
    }

    /// Renders as `x^2*y`, or `1` for the zero vector.
    pub fn display(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&vars[i]);
            if c > 1 {
                let _ = write!(out, "^{c}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Parses `x^2*y`, `x1^3*x2` or `1` against a variable list.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        let mut v = vec![0u32; vars.len()];
        let text = text.trim();
        if text == "1" {
            return Ok(ExponentVector(v));
        }
        for factor in text.split('*') {
            let (name, exp) = parse_factor(factor)?;
            let i = vars
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Syntax {
                    pos: 0,
                    msg: format!("unknown variable `{name}` in `{text}`"),
                })?;
            v[i] += exp;
        }
        Ok(ExponentVector(v))
    }
}

/// Splits `name^k` into its parts; a bare name has exponent 1.
pub(crate) fn parse_factor(factor: &str) -> Result<(&str, u32)> {
    let factor = factor.trim();
    let (name, exp) = match factor.split_once('^') {
        Some((n, e)) => {
            let e = e.trim().parse::<u32>().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("bad exponent in `{factor}`"),
            })?;
            (n.trim(), e)
        }
        None => (factor, 1),
    };
    let ok = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("malformed monomial factor `{factor}`"),
        });
    }
    Ok((name, exp))
}

fn check_arity(a: &ExponentVector, b: &ExponentVector) -> Result<()> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    Ok(())
}

/// `x^a | x^b`, i.e. `a <= b` componentwise.
pub fn divides(a: &ExponentVector, b: &ExponentVector) -> Result<bool> {
    check_arity(a, b)?;
    Ok(a.0.iter().zip(&b.0).all(|(x, y)| x <= y))
}

fn divides_unchecked(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// Default variable names for `n` variables: `x`, `x,y`, `x,y,z`, then
/// `x1..xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// A monomial ideal by its minimal generators, kept sorted lex-descending
/// (first variable largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Minimalizes `gens` and sorts them. An empty list is the zero ideal.
    pub fn from_generators(vars: Vec<String>, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            if g.arity() != vars.len() {
                return Err(Error::ArityMismatch {
                    expected: vars.len(),
                    found: g.arity(),
                });
            }
        }
        let uniq: BTreeSet<ExponentVector> = gens.into_iter().collect();
        let uniq: Vec<_> = uniq.into_iter().collect();
        let mut min: Vec<ExponentVector> = uniq
            .iter()
            .filter(|g| !uniq.iter().any(|h| h != *g && divides_unchecked(h, g)))
            .cloned()
            .collect();
        min.sort_by(|a, b| b.cmp(a));
        Ok(MonomialIdeal { vars, gens: min })
    }

    /// Convenience: parse each generator against `vars`.
    pub fn parse_generators(vars: &[&str], gens: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| ExponentVector::parse(g, &vars))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(vars, gens)
    }

    /// The box ideal `(x_1^{d_1}, ..., x_n^{d_n})`.
    pub fn box_ideal(vars: Vec<String>, dims: &[u32]) -> Result<Self> {
        let n = dims.len();
        let gens = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| ExponentVector::power(n, i, d))
            .collect();
        Self::from_generators(vars, gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn member(&self, m: &ExponentVector) -> Result<bool> {
        if m.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: m.arity(),
            });
        }
        Ok(self.gens.iter().any(|g| divides_unchecked(g, m)))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Self::from_generators(self.vars.clone(), gens)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.lcm(h)?);
            }
        }
        Self::from_generators(self.vars.clone(), gens)
    }

    /// `self ⊆ other`.
    pub fn contained_in(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.member(g).unwrap_or(false)))
    }

    /// Every variable has a pure power among the generators.
    pub fn quotient_is_finite(&self) -> bool {
        (0..self.arity()).all(|i| {
            self.gens
                .iter()
                .any(|g| matches!(g.as_pure_power(), Some((j, _)) if j == i))
        })
    }

    /// Componentwise maximum over the pure-power exponents; every standard
    /// monomial lies strictly below it. `None` for an infinite quotient.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![None; self.arity()];
        for g in &self.gens {
            if let Some((i, k)) = g.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(k, |b: u32| b.min(k)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Standard monomials, sorted by degree and then lex-descending.
    pub fn standard_monomials(&self) -> Result<Vec<ExponentVector>> {
        let bounds = self.pure_power_bounds().ok_or_else(|| {
            let missing = (0..self.arity())
                .find(|&i| !self.gens.iter().any(|g| matches!(g.as_pure_power(), Some((j, _)) if j == i)))
                .unwrap_or(0);
            Error::InfiniteQuotient(self.vars[missing].clone())
        })?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.arity()];
        if bounds.iter().all(|&b| b > 0) {
            loop {
                let e = ExponentVector(cur.clone());
                if !self.member(&e)? {
                    out.push(e);
                }
                // odometer over the bounding box
                let mut i = 0;
                loop {
                    if i == cur.len() {
                        out.sort_by_key(|e| (e.degree(), Reverse(e.clone())));
                        return Ok(out);
                    }
                    cur[i] += 1;
                    if cur[i] < bounds[i] {
                        break;
                    }
                    cur[i] = 0;
                    i += 1;
                }
            }
        }
        Ok(out)
    }

    /// `ideal(x^4, x^3*y, y^3)`.
    pub fn display(&self) -> String {
        let gens: Vec<_> = self.gens.iter().map(|g| g.display(&self.vars)).collect();
        format!("ideal({})", gens.join(", "))
    }

    /// The ideal in expression syntax, spelling out the variables when they
    /// differ from the defaults for its arity.
    pub fn to_expr(&self) -> String {
        let gens: Vec<_> = self.gens.iter().map(|g| g.display(&self.vars)).collect();
        if self.vars == default_vars(self.arity()) {
            format!("ideal({})", gens.join(", "))
        } else {
            format!("ideal[{}]({})", self.vars.join(","), gens.join(", "))
        }
    }

    /// Re-embeds into a larger variable list containing all of ours.
    pub fn extend_vars(&self, vars: &[String]) -> Result<Self> {
        let idx = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::InvalidPoset(format!("variable `{v}` missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut c = vec![0; vars.len()];
                for (k, &i) in idx.iter().enumerate() {
                    c[i] = g.0[k];
                }
                ExponentVector(c)
            })
            .collect();
        Self::from_generators(vars.to_vec(), gens)
    }
}

/// The poset of standard monomials of `R/I` under divisibility, labeled by
/// exponent vectors. Ids follow [`MonomialIdeal::standard_monomials`].
pub fn standard_monomial_poset(ideal: &MonomialIdeal) -> Result<RankedPoset> {
    let mons = ideal.standard_monomials()?;
    let index: std::collections::HashMap<&ExponentVector, usize> =
        mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut covers = Vec::new();
    for (a, m) in mons.iter().enumerate() {
        for v in 0..ideal.arity() {
            if let Some(&b) = index.get(&m.bumped(v)) {
                covers.push((a, b));
            }
        }
    }
    RankedPoset::from_spec(PosetSpec {
        name: format!("poset({})", ideal.display()),
        ranks: mons.iter().map(ExponentVector::degree).collect(),
        covers,
        labels: Some(Labels {
            vars: ideal.vars.clone(),
            exps: mons,
        }),
    })
}

/// For `I ⊆ J`, the inclusion of the standard monomials of `R/J` into those
/// of `R/I`, as a map from ids of `standard_monomial_poset(J)` to ids of
/// `standard_monomial_poset(I)`.
pub fn inclusion_map(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Vec<usize>> {
    if !i.contained_in(j)? {
        return Err(Error::InvalidInjection(format!(
            "{} is not contained in {}",
            i.display(),
            j.display()
        )));
    }
    let big = i.standard_monomials()?;
    let small = j.standard_monomials()?;
    let index: std::collections::HashMap<&ExponentVector, usize> =
        big.iter().enumerate().map(|(k, m)| (m, k)).collect();
    Ok(small.iter().map(|m| index[m]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse_generators(&["x", "y"], gens).unwrap()
    }

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    #[test]
    fn divisibility() {
        assert!(divides(&ev(&[1, 1]), &ev(&[2, 1])).unwrap());
        assert!(!divides(&ev(&[2, 0]), &ev(&[1, 3])).unwrap());
        assert!(divides(&ev(&[2, 3]), &ev(&[2, 3])).unwrap());
        assert!(divides(&ev(&[1]), &ev(&[1, 2])).is_err());
    }

    #[test]
    fn minimal_generators() {
        let i = ideal(&["x^4", "x^4*y^3", "x^3*y", "y^3"]);
        assert_eq!(i.display(), "ideal(x^4, x^3*y, y^3)");
        assert_eq!(ideal(&["x"]).display(), "ideal(x)");
        let z = ideal(&[]);
        assert!(z.is_zero());
        assert!(!z.member(&ev(&[5, 5])).unwrap());
    }

    #[test]
    fn sums_and_intersections() {
        assert_eq!(ideal(&["x^4", "y"]).sum(&ideal(&["x^3", "y^3"])).unwrap(), ideal(&["x^3", "y"]));
        assert_eq!(
            ideal(&["x^4", "y"]).intersection(&ideal(&["x^3", "y^3"])).unwrap(),
            ideal(&["x^4", "y^3", "x^3*y"])
        );
        assert_eq!(ideal(&["x"]).intersection(&ideal(&["y"])).unwrap(), ideal(&["x*y"]));
        let i = ideal(&["x^2", "x*y", "y^3"]);
        assert_eq!(i.intersection(&i).unwrap(), i);
        assert_eq!(i.sum(&ideal(&[])).unwrap(), i);
    }

    #[test]
    fn containment() {
        assert!(ideal(&["x^4", "y^3", "x^3*y"]).contained_in(&ideal(&["x^3", "y"])).unwrap());
        assert!(!ideal(&["x"]).contained_in(&ideal(&["x^2"])).unwrap());
    }

    #[test]
    fn finiteness() {
        assert!(ideal(&["x^4", "y^3", "x^3*y"]).quotient_is_finite());
        assert!(!ideal(&["x*y"]).quotient_is_finite());
        assert!(MonomialIdeal::parse_generators(&["x"], &["x^2"]).unwrap().quotient_is_finite());
        assert!(standard_monomial_poset(&ideal(&["x*y"])).is_err());
    }

    #[test]
    fn heart_example_poset() {
        let p = standard_monomial_poset(&ideal(&["x^4", "y^3", "x^3*y"])).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p.level_sizes(), vec![1, 2, 3, 3, 1]);
        let b = standard_monomial_poset(&ideal(&["x^3", "y^4"])).unwrap();
        assert_eq!(b.len(), 12);
        assert_eq!(b.max_rank(), Some(5));
        let one = standard_monomial_poset(&MonomialIdeal::parse_generators(&["x"], &["x"]).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn inclusion_into_heart() {
        let i = ideal(&["x^4", "y^3", "x^3*y"]);
        let j = ideal(&["x^3", "y"]);
        let m = inclusion_map(&i, &j).unwrap();
        let big = standard_monomial_poset(&i).unwrap();
        let got: Vec<_> = m.iter().map(|&k| big.label(k).unwrap().display(i.vars())).collect();
        assert_eq!(got, vec!["1", "x", "x^2"]);
        assert!(inclusion_map(&j, &i).is_err());
        let id = inclusion_map(&i, &i).unwrap();
        assert_eq!(id, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn parse_display_roundtrip() {
        let vars = default_vars(3);
        let m = ExponentVector::parse("x^2*z", &vars).unwrap();
        assert_eq!(m.coords(), &[2, 0, 1]);
        assert_eq!(m.display(&vars), "x^2*z");
        assert!(ExponentVector::parse("w", &vars).is_err());
        assert!(ExponentVector::parse("x^", &vars).is_err());
    }
}
