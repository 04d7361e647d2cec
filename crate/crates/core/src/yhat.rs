//! Coefficients over the universal semifield, computed in `Q(Y_1..Y_n)`, against their
//! expression through c-vectors and F-polynomials.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::{mutate_matrix, ExchangeMatrix};
use crate::laurent::Vars;
use crate::matrix::IntMatrix;
use crate::path::MutationPath;
use crate::ratfunc::RatFunc;
use crate::recurrence::RecurrenceState;
use crate::walk::{walk_levels, walk_path, Stop};

/// Coefficient tuple in `Q(Y)` together with its exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSeed {
    pub y: Vec<RatFunc>,
    pub b: IntMatrix,
}

impl YSeed {
    pub fn initial(b: &IntMatrix) -> Result<Self> {
        let n = b.order()?;
        let vars = Vars::coefficients(n);
        Ok(Self { y: (0..n).map(|i| RatFunc::var(&vars, i)).collect(), b: b.clone() })
    }

    /// `y'_k = y_k^-1`, `y'_i = y_i y_k^[b_ki]_+ (y_k + 1)^(-b_ki)`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.y.len();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let yk = &self.y[k];
        let one = RatFunc::one(yk.numerator().vars());
        let yk_plus_one = yk.add(&one)?;
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                y.push(yk.inv()?);
                continue;
            }
            let bki = self.b.get(k, i);
            if bki.is_zero() {
                y.push(self.y[i].clone());
                continue;
            }
            let mut v = self.y[i].mul(&yk_plus_one.powi_big(&-bki)?)?;
            if bki.is_positive() {
                v = v.mul(&yk.powi_big(bki)?)?;
            }
            y.push(v);
        }
        Ok(Self { y, b: mutate_matrix(&self.b, k)? })
    }
}

/// `Y^{c_j} prod_i F_i(Y)^{b_ij}` for every `j`.
pub fn yhat_from_pattern(state: &RecurrenceState) -> Result<Vec<RatFunc>> {
    let n = state.f.len();
    let vars = Vars::coefficients(n);
    let fs = state.f.iter().map(|f| RatFunc::from_poly(f.clone())).collect::<Result<Vec<_>>>()?;
    let ys: Vec<RatFunc> = (0..n).map(|i| RatFunc::var(&vars, i)).collect();
    (0..n)
        .map(|j| {
            let mut acc = RatFunc::one(&vars);
            for i in 0..n {
                let c = state.c.get(i, j);
                if !c.is_zero() {
                    acc = acc.mul(&ys[i].powi_big(c)?)?;
                }
                let b = state.b.get(i, j);
                if !b.is_zero() {
                    acc = acc.mul(&fs[i].powi_big(b)?)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn agrees(direct: &YSeed, state: &RecurrenceState) -> Result<bool> {
    Ok(yhat_from_pattern(state)? == direct.y)
}

/// Checks the identity at the endpoint of `path`.
pub fn verify_yhat_identity(b: &ExchangeMatrix, path: &MutationPath) -> Result<bool> {
    let b0 = b.matrix();
    let direct = walk_path(YSeed::initial(b0)?, path, |s, k, _| s.mutate(k))?;
    let state = RecurrenceState::along(b0, path)?;
    agrees(&direct, &state)
}

/// Checks the identity at every vertex within `depth`; returns the first failing path.
pub fn verify_yhat_to_depth(b: &ExchangeMatrix, depth: usize) -> Result<Option<MutationPath>> {
    let b0 = b.matrix().clone();
    let root = (YSeed::initial(&b0)?, RecurrenceState::initial(&b0)?);
    let walked = walk_levels(
        root,
        b.rank(),
        depth,
        |(y, s), k, _| Ok((y.mutate(k)?, s.step(&b0, k)?)),
        |(y, s), p| match agrees(y, s) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Stop::Found(p.clone())),
            Err(e) => Err(Stop::Failed(e)),
        },
    );
    match walked {
        Ok(()) => Ok(None),
        Err(Stop::Found(p)) => Ok(Some(p)),
        Err(Stop::Failed(e)) => Err(e),
    }
}

/// The coefficient tuple at the endpoint of `path`, by direct mutation.
pub fn y_along(b: &ExchangeMatrix, path: &MutationPath) -> Result<Vec<RatFunc>> {
    Ok(walk_path(YSeed::initial(b.matrix())?, path, |s, k, _| s.mutate(k))?.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_first_step() {
        let y = y_along(&a2(), &MutationPath::from_zero_based(vec![0])).unwrap();
        assert_eq!(y[0].to_string(), "(1) / (y1)");
        assert_eq!(y[1].to_string(), "(y1*y2) / (y1 + 1)");
        assert!(verify_yhat_identity(&a2(), &MutationPath::empty()).unwrap());
        assert!(verify_yhat_identity(&a2(), &MutationPath::from_zero_based(vec![0, 1])).unwrap());
    }

    #[test]
    fn a2_period() {
        // the Y-system of type A2 has period 5 up to a transposition
        let y = y_along(&a2(), &MutationPath::from_zero_based(vec![0, 1, 0, 1, 0])).unwrap();
        let init = YSeed::initial(a2().matrix()).unwrap().y;
        assert_eq!(y[0], init[1]);
        assert_eq!(y[1], init[0]);
    }

    #[test]
    fn small_walks() {
        assert_eq!(verify_yhat_to_depth(&a2(), 5).unwrap(), None);
        let b = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-2, 0]]).unwrap();
        assert_eq!(verify_yhat_to_depth(&b, 4).unwrap(), None);
    }
}
