use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("angle {value} is outside [0, pi]")]
    AngleOutOfRange { value: f64 },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("quaternion ({0:?}) is not a unit quaternion")]
    NotUnit([f64; 4]),

    #[error("product a1*a2*a3 is {distance:e} away from the identity (tolerance {tolerance:e})")]
    ProductNotIdentity { distance: f64, tolerance: f64 },

    #[error("normalized coordinate {0} is outside [0, 1]")]
    OutOfUnitInterval(f64),

    #[error("sin(t1)*sin(t2) = {0:e} is too small for the closed-form angle; use solve_witness")]
    Degenerate(f64),

    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
