//! Search for tightness witnesses: configurations with one color class of
//! size r (one above the tight bound) and all other classes singletons that
//! admit no colored Tverberg partition. NONE outcomes of the inner search
//! are exhaustive certificates, so a returned witness is certified; a
//! NOT_FOUND merely means the budget ran out and is inconclusive.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::Coloring;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

use super::{find_partition, ColoredConfiguration, Target, TverbergReport};

#[derive(Clone, Debug)]
pub enum TightnessOutcome {
    /// A certified witness: `report` holds the exhaustive NONE.
    Found { config: ColoredConfiguration, report: TverbergReport },
    /// Budget exhausted without a witness; not a disproof.
    NotFound { candidates_tried: u64 },
}

/// Searches for a tightness witness at the given parameters. Candidates
/// come from two deterministic phases: first the points 0..N on the moment
/// curve with every possible placement of the size-r class (extremal
/// configurations classically live in convex position), then seeded random
/// rational configurations. Each candidate is settled by the exhaustive
/// partition search.
pub fn find_tightness_witness(
    d: usize,
    r: usize,
    budget: u64,
    seed: u64,
) -> Result<TightnessOutcome> {
    if d < 1 || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "tightness search needs d >= 1 and r >= 2, got d={d}, r={r}"
        )));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let n = (d + 1) * (r - 1) + 1;
    let mut tried = 0u64;

    // Phase 1: moment-curve seeds, big class over each r-subset of positions.
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        if tried >= budget {
            return Ok(TightnessOutcome::NotFound { candidates_tried: tried });
        }
        let points: Vec<Vec<Rational>> = (0..n).map(|t| moment_point(t as i64, d)).collect();
        let config = build_candidate(d, r, points, &subset)?;
        tried += 1;
        let report = find_partition(&config)?;
        if report.is_none() {
            debug_assert!(report.exhaustive);
            return Ok(TightnessOutcome::Found { config, report });
        }
        if !next_subset(&mut subset, n) {
            break;
        }
    }

    // Phase 2: random rational configurations with random class placement.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while tried < budget {
        let points: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let num = rng.gen_range(-30i64..=30);
                        let den = rng.gen_range(1i64..=6);
                        BigRational::new(BigInt::from(num), BigInt::from(den))
                    })
                    .collect()
            })
            .collect();
        let mut positions: Vec<usize> = (0..n).collect();
        for i in 0..r {
            let j = rng.gen_range(i..n);
            positions.swap(i, j);
        }
        let mut class: Vec<usize> = positions[..r].to_vec();
        class.sort_unstable();
        let config = build_candidate(d, r, points, &class)?;
        tried += 1;
        let report = find_partition(&config)?;
        if report.is_none() {
            debug_assert!(report.exhaustive);
            return Ok(TightnessOutcome::Found { config, report });
        }
    }
    Ok(TightnessOutcome::NotFound { candidates_tried: tried })
}

fn moment_point(t: i64, d: usize) -> Vec<Rational> {
    let mut coords = Vec::with_capacity(d);
    let mut power = rat(1);
    for _ in 0..d {
        power *= rat(t);
        coords.push(power.clone());
    }
    coords
}

/// One class of size r at the given positions (color 0), all remaining
/// positions singleton classes in increasing order.
fn build_candidate(
    d: usize,
    r: usize,
    points: Vec<Vec<Rational>>,
    big_class: &[usize],
) -> Result<ColoredConfiguration> {
    let n = points.len();
    let mut colors = vec![usize::MAX; n];
    for &p in big_class {
        colors[p] = 0;
    }
    let mut next = 1;
    for c in colors.iter_mut() {
        if *c == usize::MAX {
            *c = next;
            next += 1;
        }
    }
    ColoredConfiguration::new(d, r, points, Coloring::new(colors)?, Target::Euclidean)
}

/// Next r-subset of 0..n in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let r = subset.len();
    let mut i = r;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < n - (r - i) {
            subset[i] += 1;
            for k in i + 1..r {
                subset[k] = subset[k - 1] + 1;
            }
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_iteration() {
        let mut s = vec![0, 1];
        let mut all = vec![s.clone()];
        while next_subset(&mut s, 4) {
            all.push(s.clone());
        }
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn d1_r2_witness_is_the_classic_one() {
        let outcome = find_tightness_witness(1, 2, 100, 7).unwrap();
        let TightnessOutcome::Found { config, report } = outcome else {
            panic!("expected a witness");
        };
        assert_eq!(config.points(), &[vec![rat(0)], vec![rat(1)], vec![rat(2)]]);
        assert_eq!(config.coloring().colors(), &[0, 1, 0]);
        assert!(report.exhaustive);
        assert!(report.is_none());
    }
}
