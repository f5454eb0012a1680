//! Velocity sets and their power-of-two embedding.

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{LbeError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub name: String,
    pub dims: usize,
    pub velocities: Vec<[i64; 3]>,
    pub weights: Vec<Rational64>,
    /// Sound speed in lattice units.
    pub cs: f64,
    /// Velocity count before embedding; `Some` once padded.
    pub original_q: Option<usize>,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl LatticeSpec {
    pub fn q(&self) -> usize {
        self.velocities.len()
    }

    pub fn is_padded(&self) -> bool {
        self.original_q.is_some()
    }

    /// `log2 Q`; only meaningful for padded lattices.
    pub fn qq(&self) -> u32 {
        self.q().trailing_zeros()
    }

    /// Number of physical (non-padding) velocities.
    pub fn physical_q(&self) -> usize {
        self.original_q.unwrap_or(self.q())
    }

    pub fn dot(&self, a: usize, b: usize) -> i64 {
        let (u, v) = (&self.velocities[a], &self.velocities[b]);
        u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    }

    pub fn weight(&self, m: usize) -> f64 {
        self.weights[m].to_f64().unwrap_or(f64::NAN)
    }

    pub fn require_padded(&self) -> Result<()> {
        if self.is_padded() && self.q().is_power_of_two() {
            Ok(())
        } else {
            Err(LbeError::NotPadded(self.name.clone()))
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dims) {
            return Err(LbeError::InvalidLattice(format!("{} dimensions", self.dims)));
        }
        if self.velocities.len() != self.weights.len() || self.velocities.is_empty() {
            return Err(LbeError::InvalidLattice("velocity and weight counts differ".into()));
        }
        let total: Rational64 = self.weights.iter().copied().fold(Rational64::zero(), |a, b| a + b);
        if total != Rational64::one() {
            return Err(LbeError::InvalidLattice(format!("weights sum to {total}")));
        }
        if self.velocities.iter().any(|e| e[self.dims..].iter().any(|&c| c != 0)) {
            return Err(LbeError::InvalidLattice("velocity component beyond the lattice dimension".into()));
        }
        if !(self.cs > 0.0) {
            return Err(LbeError::InvalidLattice("sound speed must be positive".into()));
        }
        Ok(())
    }

    /// Loads a custom velocity set from a TOML file body:
    ///
    /// ```toml
    /// name = "D1Q3"
    /// dims = 1
    /// cs = 0.5773502691896258   # or cs2 = "1/3"
    /// velocities = [[0], [1], [-1]]
    /// weights = ["2/3", "1/6", "1/6"]
    /// ```
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            dims: usize,
            cs: Option<f64>,
            cs2: Option<String>,
            velocities: Vec<Vec<i64>>,
            weights: Vec<String>,
        }
        let raw: Raw = toml::from_str(text).map_err(|e| LbeError::Parse(e.to_string()))?;
        let cs = match (raw.cs, raw.cs2) {
            (Some(c), _) => c,
            (None, Some(s)) => parse_rational(&s)?.to_f64().unwrap_or(f64::NAN).sqrt(),
            (None, None) => 1.0 / 3f64.sqrt(),
        };
        let velocities = raw
            .velocities
            .iter()
            .map(|v| {
                if v.len() > 3 {
                    return Err(LbeError::Parse("velocity with more than 3 components".into()));
                }
                let mut e = [0i64; 3];
                e[..v.len()].copy_from_slice(v);
                Ok(e)
            })
            .collect::<Result<Vec<_>>>()?;
        let weights = raw.weights.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>()?;
        let spec = LatticeSpec { name: raw.name, dims: raw.dims, velocities, weights, cs, original_q: None };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || LbeError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// D1Q3, D2Q9 or D3Q15 (unpadded).
pub fn builtin_lattice(name: &str) -> Result<LatticeSpec> {
    let (dims, velocities, weights): (usize, Vec<[i64; 3]>, Vec<Rational64>) = match name.to_ascii_uppercase().as_str() {
        "D1Q3" => (1, vec![[0, 0, 0], [1, 0, 0], [-1, 0, 0]], vec![r(2, 3), r(1, 6), r(1, 6)]),
        "D2Q9" => {
            let v = vec![
                [0, 0, 0],
                [1, 0, 0],
                [-1, 0, 0],
                [0, 1, 0],
                [0, -1, 0],
                [1, 1, 0],
                [-1, 1, 0],
                [1, -1, 0],
                [-1, -1, 0],
            ];
            let mut w = vec![r(4, 9)];
            w.extend([r(1, 9); 4]);
            w.extend([r(1, 36); 4]);
            (2, v, w)
        }
        "D3Q15" => {
            let mut v = vec![[0, 0, 0], [1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];
            for x in [1, -1] {
                for y in [1, -1] {
                    for z in [1, -1] {
                        v.push([x, y, z]);
                    }
                }
            }
            let mut w = vec![r(2, 9)];
            w.extend([r(1, 9); 6]);
            w.extend([r(1, 72); 8]);
            (3, v, w)
        }
        _ => return Err(LbeError::UnknownLattice(name.to_string())),
    };
    Ok(LatticeSpec {
        name: name.to_ascii_uppercase(),
        dims,
        velocities,
        weights,
        cs: 1.0 / 3f64.sqrt(),
        original_q: None,
    })
}

/// Pads to `Q^(e) = 2^(floor(log Q) + 1)` zero velocities with zero weight.
pub fn embed_lattice(spec: &LatticeSpec) -> LatticeSpec {
    if spec.is_padded() {
        return spec.clone();
    }
    let q = spec.q();
    let qe = 1usize << (usize::BITS - 1 - q.leading_zeros() + 1);
    let mut out = spec.clone();
    out.velocities.resize(qe, [0; 3]);
    out.weights.resize(qe, Rational64::zero());
    out.original_q = Some(q);
    out.name = format!("{}*", spec.name);
    out
}

/// Built-in lattice by name, padded. Accepts a trailing `*`.
pub fn padded_builtin(name: &str) -> Result<LatticeSpec> {
    Ok(embed_lattice(&builtin_lattice(name.trim_end_matches('*'))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_sizes() {
        assert_eq!(padded_builtin("D1Q3").unwrap().q(), 4);
        assert_eq!(padded_builtin("D2Q9").unwrap().q(), 16);
        assert_eq!(padded_builtin("D3Q15*").unwrap().q(), 16);
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational(" 1/36 ").unwrap(), r(1, 36));
        assert_eq!(parse_rational("2").unwrap(), r(2, 1));
        assert!(parse_rational("1/0").is_err());
    }
}
