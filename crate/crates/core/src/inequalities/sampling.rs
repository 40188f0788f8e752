//! Random distributions on which the premises of a conditional Ingleton
//! inequality hold by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_conditional_ingleton, xyzu_assignment, ConditionalIngletonRule, INGLETON_TOL};
use crate::basic_set::SubsetMask;
use crate::dist::{random_joint, JointDistribution};
use crate::error::Result;

const NAMES: [&str; 4] = ["x", "y", "z", "u"];

fn m(bits: u32) -> SubsetMask {
    SubsetMask(bits)
}

const X: u32 = 1;
const Y: u32 = 2;
const Z: u32 = 4;
const U: u32 = 8;

/// A distribution over `x, y, z, u` satisfying a statement that implies
/// both premises of rule `id`:
///
/// - 1: `X ⊥ YZU`
/// - 2: `Y ⊥ XU | Z`
/// - 3: `X ⊥ ZU`, then `Y ⊥ X | ZU`
/// - 4: `Z ⊥ XU`, then `Y ⊥ Z | XU`
/// - 5: `Z ⊥ XY | U`
pub fn sample_enforcing<R: Rng>(rng: &mut R, id: u8, max_card: usize) -> Result<JointDistribution> {
    ConditionalIngletonRule::get(id)?;
    let p0 = random_joint(rng, &NAMES, max_card);
    let out = match id {
        1 => p0.conditional_product_of_marginals(m(X), m(Y | Z | U), m(0))?,
        2 => p0.conditional_product_of_marginals(m(X | U), m(Y), m(Z))?,
        3 => {
            let p1 = p0.conditional_product_of_marginals(m(X), m(Z | U), m(0))?;
            JointDistribution::conditional_product(&p1, &p0.marginal(m(Y | Z | U))?)?
        }
        4 => {
            let p1 = p0.conditional_product_of_marginals(m(Z), m(X | U), m(0))?;
            JointDistribution::conditional_product(&p1, &p0.marginal(m(X | Y | U))?)?
        }
        _ => p0.conditional_product_of_marginals(m(X | Y), m(Z), m(U))?,
    };
    out.reorder(&NAMES)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub rule: u8,
    pub samples: usize,
    /// Samples on which the premises held (all of them, by construction).
    pub premises_held: usize,
    pub min_ingleton: f64,
    pub passed: bool,
}

/// Checks rule `id` on `samples` seeded random distributions.
pub fn check_rule_on_samples(id: u8, samples: usize, seed: u64) -> Result<SampleSummary> {
    let rule = ConditionalIngletonRule::get(id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(id) << 32);
    let a = xyzu_assignment();
    let mut premises_held = 0;
    let mut min_ingleton = f64::INFINITY;
    for _ in 0..samples {
        let p = sample_enforcing(&mut rng, id, 3)?;
        let c = check_conditional_ingleton(&p, &rule, &a)?;
        if c.premises_hold {
            premises_held += 1;
        }
        min_ingleton = min_ingleton.min(c.ingleton_value);
    }
    Ok(SampleSummary {
        rule: id,
        samples,
        premises_held,
        min_ingleton,
        passed: premises_held == samples && min_ingleton >= -INGLETON_TOL,
    })
}
