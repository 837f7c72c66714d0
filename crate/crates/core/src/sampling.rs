//! Seed derivation and coefficient distributions.
//!
//! Every record (or experiment trial) owns a ChaCha8 stream seeded with
//! `derive_seed(master_seed, index)`, a SplitMix64 finalizer applied to
//! `master_seed + (index + 1) * 0x9E3779B97F4A7C15`. Results therefore do not
//! depend on how work is scheduled across threads.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldConfig};

pub type RecordRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E3779B97F4A7C15)))
}

pub fn rng_from_seed(seed: u64) -> RecordRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoeffSampler {
    /// Integers uniform in `[lo, hi]`, mapped into the field.
    UniformIntBox { lo: i64, hi: i64 },
    /// `num / den` with `num` uniform in `[num_lo, num_hi]` and `den` uniform
    /// in `[1, den_max]`.
    UniformRational { num_lo: i64, num_hi: i64, den_max: u64 },
    /// Uniform over `F_p`; only valid for prime fields.
    UniformFieldElement,
}

/// A coefficient distribution: with probability `zero_weight` the draw is 0,
/// otherwise it comes from `sampler`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDistribution {
    pub sampler: CoeffSampler,
    pub zero_weight: f64,
}

impl Default for CoeffDistribution {
    fn default() -> Self {
        CoeffDistribution { sampler: CoeffSampler::UniformIntBox { lo: -5, hi: 5 }, zero_weight: 0.3 }
    }
}

impl CoeffDistribution {
    pub fn int_box(lo: i64, hi: i64, zero_weight: f64) -> Self {
        CoeffDistribution { sampler: CoeffSampler::UniformIntBox { lo, hi }, zero_weight }
    }

    pub fn validate(&self, field: FieldConfig) -> Result<()> {
        if !(0.0..=1.0).contains(&self.zero_weight) {
            return Err(Error::InvalidArgument(format!("zero_weight {} outside [0, 1]", self.zero_weight)));
        }
        match self.sampler {
            CoeffSampler::UniformIntBox { lo, hi } if lo > hi => {
                Err(Error::InvalidArgument(format!("empty integer box [{lo}, {hi}]")))
            }
            CoeffSampler::UniformRational { num_lo, num_hi, den_max } if num_lo > num_hi || den_max == 0 => Err(
                Error::InvalidArgument(format!("empty rational box [{num_lo}, {num_hi}] / [1, {den_max}]")),
            ),
            CoeffSampler::UniformRational { den_max, .. } => match field {
                // every denominator must be invertible
                FieldConfig::PrimeField { p } if den_max >= p => Err(Error::InvalidArgument(format!(
                    "den_max {den_max} admits denominators divisible by {p}"
                ))),
                _ => Ok(()),
            },
            CoeffSampler::UniformFieldElement if field == FieldConfig::Rationals => {
                Err(Error::InvalidArgument("uniform_field_element needs a prime field".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, field: FieldConfig, rng: &mut R) -> Coeff {
        if self.zero_weight > 0.0 && rng.gen_bool(self.zero_weight) {
            return field.zero();
        }
        match self.sampler {
            CoeffSampler::UniformIntBox { lo, hi } => field.from_i64(rng.gen_range(lo..=hi)),
            CoeffSampler::UniformRational { num_lo, num_hi, den_max } => {
                let num = rng.gen_range(num_lo..=num_hi);
                let den = rng.gen_range(1..=den_max);
                field
                    .from_fraction(&BigInt::from(num), &BigInt::from(den))
                    .expect("validated denominators are invertible")
            }
            CoeffSampler::UniformFieldElement => match field {
                FieldConfig::PrimeField { p } => field.from_i64(rng.gen_range(0..p) as i64),
                FieldConfig::Rationals => panic!("uniform_field_element over Q"),
            },
        }
    }

    /// A draw conditioned on being nonzero (rejection sampling). Fails if
    /// the distribution cannot produce a nonzero value.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, field: FieldConfig, rng: &mut R) -> Result<Coeff> {
        let nonzero = CoeffDistribution { zero_weight: 0.0, ..self.clone() };
        for _ in 0..1000 {
            let c = nonzero.sample(field, rng);
            if !c.is_zero() {
                return Ok(c);
            }
        }
        Err(Error::ResampleExhausted { retries: 1000, reason: "distribution yields only zero".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let a: Vec<u64> = (0..100).map(|i| derive_seed(42, i)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(b.len(), 100);
        assert_eq!(derive_seed(42, 7), a[7]);
        assert_ne!(derive_seed(43, 7), a[7]);
    }

    #[test]
    fn validation() {
        let q = FieldConfig::Rationals;
        assert!(CoeffDistribution::int_box(3, 2, 0.0).validate(q).is_err());
        assert!(CoeffDistribution::int_box(0, 2, 1.5).validate(q).is_err());
        let fe = CoeffDistribution { sampler: CoeffSampler::UniformFieldElement, zero_weight: 0.0 };
        assert!(fe.validate(q).is_err());
        assert!(fe.validate(FieldConfig::prime(7).unwrap()).is_ok());
        let rat = CoeffDistribution {
            sampler: CoeffSampler::UniformRational { num_lo: -3, num_hi: 3, den_max: 7 },
            zero_weight: 0.0,
        };
        assert!(rat.validate(FieldConfig::prime(7).unwrap()).is_err());
        assert!(rat.validate(q).is_ok());
    }

    #[test]
    fn samples_stay_in_the_box() {
        let mut rng = rng_from_seed(1);
        let d = CoeffDistribution::int_box(-2, 2, 0.5);
        let q = FieldConfig::Rationals;
        let mut zeros = 0;
        for _ in 0..2000 {
            let c = d.sample(q, &mut rng);
            let v = c.as_rational().unwrap();
            assert!(v.is_integer() && v.numer() >= &BigInt::from(-2) && v.numer() <= &BigInt::from(2));
            zeros += c.is_zero() as usize;
        }
        // P(zero) = 0.5 + 0.5 / 5 = 0.6
        assert!((1050..1350).contains(&zeros), "{zeros}");
    }

    #[test]
    fn nonzero_draws() {
        let mut rng = rng_from_seed(3);
        let q = FieldConfig::Rationals;
        assert!(CoeffDistribution::int_box(0, 0, 0.0).sample_nonzero(q, &mut rng).is_err());
        let c = CoeffDistribution::int_box(-1, 1, 0.9).sample_nonzero(q, &mut rng).unwrap();
        assert!(!c.is_zero());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&CoeffDistribution::default()).unwrap();
        assert_eq!(s, r#"{"sampler":{"kind":"uniform_int_box","lo":-5,"hi":5},"zero_weight":0.3}"#);
        assert!(serde_json::from_str::<CoeffDistribution>(r#"{"sampler":{"kind":"uniform_int_box","lo":0,"hi":1,"x":2},"zero_weight":0}"#).is_err());
    }
}
