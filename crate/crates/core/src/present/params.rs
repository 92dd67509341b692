//! Named scalar, vector and matrix parameters of a family, with JSON I/O.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Scalar(Scalar),
    Vector(Vec<Scalar>),
    Matrix(Vec<Vec<Scalar>>),
}

/// Expected shape of a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Scalar,
    Vector(usize),
    Matrix(usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamSet {
    values: BTreeMap<String, Param>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ParamJson {
    Scalar(String),
    Vector(Vec<String>),
    Matrix(Vec<Vec<String>>),
}

impl ParamSet {
    pub fn new() -> Self {
        ParamSet::default()
    }

    pub fn with(mut self, name: &str, p: Param) -> Self {
        self.values.insert(name.to_string(), p);
        self
    }

    pub fn scalar(self, name: &str, s: Scalar) -> Self {
        self.with(name, Param::Scalar(s))
    }

    pub fn insert(&mut self, name: &str, p: Param) {
        self.values.insert(name.to_string(), p);
    }

    pub fn get(&self, name: &str) -> Option<&Param> {
        self.values.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.values.keys()
    }

    /// Checks every entry against `shapes`; names not present are zero.
    pub fn check_shapes(&self, shapes: &[(&str, Shape)]) -> Result<()> {
        for name in self.values.keys() {
            if !shapes.iter().any(|(n, _)| n == name) {
                return Err(Error::UnknownName(format!("parameter `{name}`")));
            }
        }
        for (name, shape) in shapes {
            let ok = match (self.values.get(*name), shape) {
                (None, _) => true,
                (Some(Param::Scalar(_)), Shape::Scalar) => true,
                (Some(Param::Vector(v)), Shape::Vector(n)) => v.len() == *n,
                (Some(Param::Matrix(m)), Shape::Matrix(r, c)) => m.len() == *r && m.iter().all(|row| row.len() == *c),
                // a 1x1 matrix or a length-1 vector may be given as a scalar
                (Some(Param::Scalar(_)), Shape::Vector(1)) | (Some(Param::Scalar(_)), Shape::Matrix(1, 1)) => true,
                _ => false,
            };
            if !ok {
                return Err(Error::Shape(format!("parameter `{name}` should be {shape:?}")));
            }
        }
        Ok(())
    }

    pub fn scalar_or_zero(&self, name: &str) -> Scalar {
        match self.values.get(name) {
            Some(Param::Scalar(s)) => s.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn vector_entry(&self, name: &str, i: usize) -> Scalar {
        match self.values.get(name) {
            Some(Param::Vector(v)) => v.get(i).cloned().unwrap_or_else(Scalar::zero),
            Some(Param::Scalar(s)) if i == 0 => s.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn matrix_entry(&self, name: &str, i: usize, j: usize) -> Scalar {
        match self.values.get(name) {
            Some(Param::Matrix(m)) => m.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Scalar::zero),
            Some(Param::Scalar(s)) if i == 0 && j == 0 => s.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, ParamJson> =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("parameter file: {e}")))?;
        let parse = |s: &str| -> Result<Scalar> { crate::expr::eval_scalar(s, &BTreeMap::new()) };
        let mut values = BTreeMap::new();
        for (k, v) in raw {
            let p = match v {
                ParamJson::Scalar(s) => Param::Scalar(parse(&s)?),
                ParamJson::Vector(v) => Param::Vector(v.iter().map(|s| parse(s)).collect::<Result<_>>()?),
                ParamJson::Matrix(m) => Param::Matrix(
                    m.iter().map(|row| row.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
                ),
            };
            values.insert(k, p);
        }
        Ok(ParamSet { values })
    }

    pub fn to_json(&self) -> String {
        let raw: BTreeMap<&String, ParamJson> = self
            .values
            .iter()
            .map(|(k, v)| {
                let j = match v {
                    Param::Scalar(s) => ParamJson::Scalar(s.to_string()),
                    Param::Vector(v) => ParamJson::Vector(v.iter().map(|s| s.to_string()).collect()),
                    Param::Matrix(m) => {
                        ParamJson::Matrix(m.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect())
                    }
                };
                (k, j)
            })
            .collect();
        serde_json::to_string(&raw).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let p = ParamSet::new()
            .scalar("lambda", Scalar::from_frac(1, 2))
            .with("mu", Param::Vector(vec![Scalar::xi(), Scalar::from_int(-1)]))
            .with("nu", Param::Matrix(vec![vec![Scalar::one(), Scalar::zero()]]));
        let text = p.to_json();
        assert_eq!(ParamSet::from_json(&text).unwrap(), p);
        assert!(p.check_shapes(&[("lambda", Shape::Scalar), ("mu", Shape::Vector(2)), ("nu", Shape::Matrix(1, 2))]).is_ok());
        assert!(matches!(p.check_shapes(&[("lambda", Shape::Scalar), ("mu", Shape::Vector(3)), ("nu", Shape::Matrix(1, 2))]), Err(Error::Shape(_))));
        assert!(matches!(p.check_shapes(&[("lambda", Shape::Scalar)]), Err(Error::UnknownName(_))));
    }
}
