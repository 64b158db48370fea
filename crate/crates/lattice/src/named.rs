use num_traits::Zero;
use quaternion::hurwitz_gram;
use scalar_tower::{parse_rational, Mat, Rational, Ring};
use serde::{Deserialize, Serialize};

use crate::LatticeError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Named {
    U,
    /// U(n)
    Un(i64),
    D4Minus,
    OrthogonalSum(Vec<Named>),
}

impl Named {
    /// Accepts `U`, `U(n)`, `U2`, `D4minus`, `D4(-1)`.
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "U" | "U(1)" => Ok(Named::U),
            "D4minus" | "D4(-1)" => Ok(Named::D4Minus),
            _ => {
                let inner = t
                    .strip_prefix("U(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix('U'));
                inner
                    .and_then(|n| n.parse::<i64>().ok())
                    .filter(|&n| n > 0)
                    .map(Named::Un)
                    .ok_or_else(|| LatticeError::UnknownName(s.to_string()))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Named::U => "U".into(),
            Named::Un(n) => format!("U({n})"),
            Named::D4Minus => "D4(-1)".into(),
            Named::OrthogonalSum(v) => v.iter().map(|x| x.label()).collect::<Vec<_>>().join(" + "),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    pub rank: usize,
    pub gram: Mat<Rational>,
}

impl IntLattice {
    pub fn from_gram(gram: Mat<Rational>) -> Result<Self, LatticeError> {
        if !gram.is_square() || gram.transpose() != gram {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(IntLattice { rank: gram.rows(), gram })
    }

    pub fn orthogonal_sum(parts: &[IntLattice]) -> IntLattice {
        let n: usize = parts.iter().map(|p| p.rank).sum();
        let mut g = Mat::zeros(n, n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank {
                for j in 0..p.rank {
                    g[(off + i, off + j)] = p.gram[(i, j)].clone();
                }
            }
            off += p.rank;
        }
        IntLattice { rank: n, gram: g }
    }
}

pub fn named_lattice(name: &Named) -> IntLattice {
    match name {
        Named::U => named_lattice(&Named::Un(1)),
        Named::Un(n) => {
            let z = Rational::zero();
            let v = Rational::from_int(*n);
            IntLattice { rank: 2, gram: Mat::from_rows(vec![vec![z.clone(), v.clone()], vec![v, z]]) }
        }
        Named::D4Minus => IntLattice { rank: 4, gram: hurwitz_gram().scale(&Rational::from_int(-2)) },
        Named::OrthogonalSum(parts) => {
            IntLattice::orthogonal_sum(&parts.iter().map(named_lattice).collect::<Vec<_>>())
        }
    }
}

/// A lattice as it appears in job files: named summands or an explicit Gram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeSpec {
    Summands(Vec<String>),
    Gram(Vec<Vec<String>>),
}

impl LatticeSpec {
    pub fn build(&self) -> Result<IntLattice, LatticeError> {
        match self {
            LatticeSpec::Summands(names) => {
                let parts = names.iter().map(|s| Named::parse(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(named_lattice(&Named::OrthogonalSum(parts)))
            }
            LatticeSpec::Gram(rows) => {
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| LatticeError::BadSpec(e.to_string()))?;
                if parsed.iter().any(|r| r.len() != parsed.len()) {
                    return Err(LatticeError::BadSpec("gram must be square".into()));
                }
                IntLattice::from_gram(Mat::from_rows(parsed))
            }
        }
    }

    pub fn summands(&self) -> Option<Vec<Named>> {
        match self {
            LatticeSpec::Summands(names) => names.iter().map(|s| Named::parse(s).ok()).collect(),
            LatticeSpec::Gram(_) => None,
        }
    }
}
