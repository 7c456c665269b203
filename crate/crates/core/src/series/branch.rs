//! Branches of the logarithm: `l_p(z) = log|z| + i·arg z + 2πip`, `0 ≤ arg z < 2π`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::NumericComplex;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub z: NumericComplex,
    pub p: i64,
}

impl BranchPoint {
    pub fn new(z: NumericComplex, p: i64) -> Result<Self> {
        if z == NumericComplex::new(0.0, 0.0) {
            return Err(Error::ZeroPoint);
        }
        Ok(BranchPoint { z, p })
    }

    pub fn real(z: f64, p: i64) -> Result<Self> {
        Self::new(NumericComplex::new(z, 0.0), p)
    }
}

/// Argument in `[0, 2π)`.
pub fn arg_0_2pi(z: NumericComplex) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

pub fn branch_value(bp: &BranchPoint) -> Result<NumericComplex> {
    if bp.z.norm() == 0.0 {
        return Err(Error::ZeroPoint);
    }
    Ok(NumericComplex::new(bp.z.norm().ln(), arg_0_2pi(bp.z) + 2.0 * PI * bp.p as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = branch_value(&BranchPoint::real(1.0, 0).unwrap()).unwrap();
        assert_eq!(v, NumericComplex::new(0.0, 0.0));
        let v = branch_value(&BranchPoint::real(1.0, 1).unwrap()).unwrap();
        assert!((v - NumericComplex::new(0.0, 2.0 * PI)).norm() < 1e-15);
        let v = branch_value(&BranchPoint::real(-1.0, 0).unwrap()).unwrap();
        assert!((v - NumericComplex::new(0.0, PI)).norm() < 1e-15);
        assert!(BranchPoint::real(0.0, 0).is_err());
    }
}
