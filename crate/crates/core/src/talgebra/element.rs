use serde_json::{Map, Value};

use super::TAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element `a = Σ a_ij` stored component by component.
///
/// Components with zero dimension are empty vectors. Arithmetic between
/// elements assumes both come from the same algebra; use
/// [`TAlgebra::star`] and friends for checked operations.
#[derive(Debug, Clone, PartialEq)]
pub struct BigradedElement<S> {
    rank: usize,
    comps: Vec<Vec<S>>,
}

impl<S: Scalar> BigradedElement<S> {
    pub(crate) fn zero_with(rank: usize, dim: impl Fn(usize, usize) -> usize) -> Self {
        let mut comps = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                comps.push(vec![S::zero(); dim(i, j)]);
            }
        }
        BigradedElement { rank, comps }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn component(&self, i: usize, j: usize) -> &[S] {
        &self.comps[i * self.rank + j]
    }

    pub fn component_mut(&mut self, i: usize, j: usize) -> &mut Vec<S> {
        &mut self.comps[i * self.rank + j]
    }

    /// Replaces component `(i, j)`, keeping its length.
    pub fn set_component(&mut self, i: usize, j: usize, values: &[S]) -> Result<()> {
        let c = self.component_mut(i, j);
        if c.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "component ({},{}) has dimension {}, got {} values",
                i + 1,
                j + 1,
                c.len(),
                values.len()
            )));
        }
        c.clone_from_slice(values);
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| {
                assert_eq!(a.len(), b.len(), "component shape mismatch");
                a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
            })
            .collect();
        BigradedElement { rank: self.rank, comps }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        BigradedElement {
            rank: self.rank,
            comps: self.comps.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BigradedElement<T> {
        BigradedElement {
            rank: self.rank,
            comps: self.comps.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    pub fn to_f64(&self) -> BigradedElement<f64> {
        self.map_scalar(|v| v.to_f64_lossy())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(|v| v.is_zero())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> S {
        self.comps
            .iter()
            .flatten()
            .fold(S::zero(), |acc, v| S::max_of(acc, v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> S {
        self.sub(other).max_abs()
    }

    /// Whether every component `(i, j)` with `keep(i, j) == false` vanishes.
    pub fn vanishes_outside(&self, keep: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| keep(i, j) || self.component(i, j).iter().all(|v| v.is_zero()))
        })
    }

    /// `{"components": {"i,j": [...]}}` with 1-based keys; zero-dimensional
    /// components are omitted.
    pub fn to_json(&self) -> Value {
        let mut comps = Map::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let c = self.component(i, j);
                if !c.is_empty() {
                    comps.insert(format!("{},{}", i + 1, j + 1), c.iter().map(S::to_json).collect());
                }
            }
        }
        let mut out = Map::new();
        out.insert("components".into(), Value::Object(comps));
        Value::Object(out)
    }

    /// Parses the JSON form against `alg`'s dimensions. Missing components
    /// are zero.
    pub fn from_json(value: &Value, alg: &TAlgebra<S>) -> Result<Self> {
        let comps = value
            .get("components")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("expected an object with a \"components\" map".into()))?;
        let r = alg.rank();
        let mut out = alg.zero();
        for (key, vals) in comps {
            let (i, j) = parse_key(key, r)?;
            let arr = vals
                .as_array()
                .ok_or_else(|| Error::Parse(format!("component {key} must be an array")))?;
            let parsed: Vec<S> = arr
                .iter()
                .map(|v| S::from_json(v).ok_or_else(|| Error::Parse(format!("bad number {v} in component {key}"))))
                .collect::<Result<_>>()?;
            out.set_component(i, j, &parsed)?;
        }
        Ok(out)
    }
}

fn parse_key(key: &str, r: usize) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("component key {key:?} must look like \"i,j\"")))?;
    let parse = |s: &str| -> Result<usize> {
        let v: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad index in key {key:?}")))?;
        if v == 0 || v > r {
            return Err(Error::BadIndex { index: v, bound: r });
        }
        Ok(v - 1)
    };
    Ok((parse(a)?, parse(b)?))
}

#[cfg(test)]
mod tests {
    use super::super::tests::matrix_algebra;
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn json_round_trip() {
        let alg = matrix_algebra(2);
        let mut a = alg.zero();
        a.component_mut(0, 1)[0] = 0.25;
        a.component_mut(1, 1)[0] = -3.0;
        let j = a.to_json();
        assert_eq!(j["components"]["1,2"], serde_json::json!([0.25]));
        assert_eq!(BigradedElement::from_json(&j, &alg).unwrap(), a);
    }

    #[test]
    fn json_rejects_bad_keys() {
        let alg = matrix_algebra(2);
        let bad = serde_json::json!({"components": {"3,1": [1.0]}});
        assert!(matches!(BigradedElement::from_json(&bad, &alg), Err(Error::BadIndex { .. })));
        let bad = serde_json::json!({"components": {"1,1": [1.0, 2.0]}});
        assert!(matches!(BigradedElement::from_json(&bad, &alg), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rational_json_is_exact() {
        let alg = matrix_algebra(1).map_scalar(|c| Rational::from_f64_lossy(*c));
        let j = serde_json::json!({"components": {"1,1": ["1/3"]}});
        let a = BigradedElement::from_json(&j, &alg).unwrap();
        assert_eq!(a.component(0, 0)[0], Rational::from_ratio(1, 3));
        assert_eq!(a.to_json(), j);
    }
}
