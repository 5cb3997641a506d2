use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::HermiteBasis;

/// A configuration invariant under a full-rank lattice `L`.
///
/// Values are stored per coset of `L`, addressed by the Hermite-reduced
/// representative of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullPeriodicConfig {
    basis: Vec<Vec<i64>>,
    hermite: HermiteBasis,
    table: Vec<BigInt>,
}

impl FullPeriodicConfig {
    /// `values` follow the order of [`FullPeriodicConfig::representatives`].
    pub fn new(basis: Vec<Vec<i64>>, values: Vec<BigInt>) -> Result<Self> {
        let hermite = HermiteBasis::new(&basis)
            .ok_or_else(|| Error::Invalid("lattice basis must be d independent vectors in Z^d".into()))?;
        let n = hermite.index() as usize;
        if values.len() != n {
            return Err(Error::Invalid(format!("expected {n} coset values, got {}", values.len())));
        }
        Ok(FullPeriodicConfig { basis, hermite, table: values })
    }

    pub fn from_fn(basis: Vec<Vec<i64>>, f: impl Fn(&[i64]) -> BigInt) -> Result<Self> {
        let hermite = HermiteBasis::new(&basis)
            .ok_or_else(|| Error::Invalid("lattice basis must be d independent vectors in Z^d".into()))?;
        let table = hermite.representatives().iter().map(|r| f(r)).collect();
        Ok(FullPeriodicConfig { basis, hermite, table })
    }

    /// Indicator of `ones + L`.
    pub fn indicator(basis: Vec<Vec<i64>>, ones: &[Vec<i64>]) -> Result<Self> {
        let hermite = HermiteBasis::new(&basis)
            .ok_or_else(|| Error::Invalid("lattice basis must be d independent vectors in Z^d".into()))?;
        let mut table = vec![BigInt::zero(); hermite.index() as usize];
        for v in ones {
            if v.len() != hermite.dim() {
                return Err(Error::DimensionMismatch { expected: hermite.dim(), got: v.len() });
            }
            table[hermite.rep_index(&hermite.reduce(v))] = BigInt::one();
        }
        Ok(FullPeriodicConfig { basis, hermite, table })
    }

    pub fn dim(&self) -> usize {
        self.hermite.dim()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn hermite(&self) -> &HermiteBasis {
        &self.hermite
    }

    pub fn representatives(&self) -> Vec<Vec<i64>> {
        self.hermite.representatives()
    }

    pub fn table(&self) -> &[BigInt] {
        &self.table
    }

    pub fn value(&self, v: &[i64]) -> BigInt {
        self.table[self.hermite.rep_index(&self.hermite.reduce(v))].clone()
    }

    pub fn axis_periods(&self) -> Vec<i64> {
        self.hermite.axis_periods()
    }

    pub fn values(&self) -> BTreeSet<BigInt> {
        self.table.iter().cloned().collect()
    }

    pub fn is_binary(&self) -> bool {
        self.table.iter().all(|x| x.is_zero() || x.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_under_basis() {
        let c = FullPeriodicConfig::from_fn(vec![vec![2, 1], vec![0, 3]], |v| BigInt::from(v[0] * 7 + v[1])).unwrap();
        for x in -5..5 {
            for y in -5..5 {
                let a = c.value(&[x, y]);
                assert_eq!(a, c.value(&[x + 2, y + 1]));
                assert_eq!(a, c.value(&[x, y + 3]));
            }
        }
        assert_eq!(c.axis_periods(), vec![6, 3]);
    }

    #[test]
    fn indicator_of_multiples() {
        let c = FullPeriodicConfig::indicator(vec![vec![3]], &[vec![0]]).unwrap();
        let vals: Vec<_> = (-3..4).map(|i| c.value(&[i])).collect();
        let want: Vec<BigInt> = [1, 0, 0, 1, 0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(vals, want);
        assert!(c.is_binary());
    }

    #[test]
    fn rejects_degenerate_basis() {
        assert!(FullPeriodicConfig::new(vec![vec![1, 1], vec![2, 2]], vec![]).is_err());
        assert!(FullPeriodicConfig::new(vec![vec![2, 0], vec![0, 1]], vec![BigInt::one()]).is_err());
    }
}
