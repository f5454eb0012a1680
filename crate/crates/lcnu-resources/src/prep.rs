//! PREP-oracle estimate.

use crate::error::{ResourceError, Result};

/// Order-of-magnitude T count `N_s log2(1/eps)` of preparing an arbitrary
/// `N_s`-amplitude state (unit constant).
pub fn prep_cost(n_s: u64, epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ResourceError::Params(format!("epsilon = {epsilon} outside (0, 1)")));
    }
    Ok((n_s as f64 * (1.0 / epsilon).log2()).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_precision_costs_one_per_term() {
        assert_eq!(prep_cost(67, 0.5).unwrap(), 67);
        assert!(prep_cost(67, 1.0).is_err());
    }
}
