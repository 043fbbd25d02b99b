use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SeriesError;

/// A vector of integer partitions, one per contact divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct PartitionVector {
    partitions: Vec<Vec<u64>>,
}

/// `m` is the product of all parts, `aut` the product of the factorials of
/// part multiplicities, `sign` the product of `(-1)^(l - |mu|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub m: BigInt,
    pub aut: BigInt,
    pub sign: i8,
}

impl PartitionVector {
    /// Sorts each partition into weakly decreasing order. Zero parts are
    /// rejected.
    pub fn new(mut partitions: Vec<Vec<u64>>) -> Result<Self, SeriesError> {
        for p in &mut partitions {
            if p.contains(&0) {
                return Err(SeriesError::Precondition("partition parts must be positive".into()));
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Self { partitions })
    }

    pub fn single(d: u64) -> Self {
        Self { partitions: vec![vec![d]] }
    }

    pub fn partitions(&self) -> &[Vec<u64>] {
        &self.partitions
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// `sum_j |mu_j|`.
    pub fn size(&self) -> u64 {
        self.partitions.iter().flatten().sum()
    }

    /// `sum_j l(mu_j)`.
    pub fn length(&self) -> u64 {
        self.partitions.iter().map(|p| p.len() as u64).sum()
    }

    pub fn stats(&self) -> PartitionStats {
        let mut m = BigInt::one();
        let mut aut = BigInt::one();
        for p in &self.partitions {
            for part in p {
                m *= *part;
            }
            let mut run = 0u64;
            for (i, part) in p.iter().enumerate() {
                run = if i > 0 && p[i - 1] == *part { run + 1 } else { 1 };
                aut *= run;
            }
        }
        let parity = (self.length() + self.size()) % 2;
        PartitionStats { m, aut, sign: if parity == 0 { 1 } else { -1 } }
    }
}

pub fn partition_stats(mu: &PartitionVector) -> PartitionStats {
    mu.stats()
}

impl TryFrom<Vec<Vec<u64>>> for PartitionVector {
    type Error = SeriesError;
    fn try_from(v: Vec<Vec<u64>>) -> Result<Self, SeriesError> {
        Self::new(v)
    }
}

impl From<PartitionVector> for Vec<Vec<u64>> {
    fn from(p: PartitionVector) -> Self {
        p.partitions
    }
}

impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partitions
            .iter()
            .map(|p| format!("({})", p.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `((2,1),(3))` as well as `[[2,1],[3]]`.
impl FromStr for PartitionVector {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        let json = s.trim().replace('(', "[").replace(')', "]");
        let raw: Vec<Vec<u64>> =
            serde_json::from_str(&json).map_err(|e| SeriesError::Precondition(format!("bad partition vector {s:?}: {e}")))?;
        Self::new(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(s: &str) -> (i64, i64, i8) {
        let st = s.parse::<PartitionVector>().unwrap().stats();
        (st.m.try_into().unwrap(), st.aut.try_into().unwrap(), st.sign)
    }

    #[test]
    fn examples() {
        assert_eq!(stats("((1,1))"), (1, 2, 1));
        assert_eq!(stats("((2,1))"), (2, 1, -1));
        assert_eq!(stats("((1,2))"), (2, 1, -1));
        for d in 1..6i64 {
            let sign = if (1 - d) % 2 == 0 { 1 } else { -1 };
            assert_eq!(stats(&format!("(({d}))")), (d, 1, sign));
        }
        assert_eq!(stats("((2,2,2,1),(3,3))"), (72, 12, -1));
        assert_eq!(stats("()"), (1, 1, 1));
    }

    #[test]
    fn display_round_trip() {
        let p: PartitionVector = "[[1,3],[2]]".parse().unwrap();
        assert_eq!(p.to_string(), "((3,1),(2))");
        assert_eq!(p.to_string().parse::<PartitionVector>().unwrap(), p);
        assert!("((0))".parse::<PartitionVector>().is_err());
    }
}
