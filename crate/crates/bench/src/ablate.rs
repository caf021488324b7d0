//! Condition ticks as a function of the compaction depth.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use obtea_core::bt::simulate;
use obtea_core::planner::{assemble, compact, plan_subgoal, SubgoalOutcome};

use crate::compare::MAX_ROOT_TICKS;
use crate::gen::{generate, GenParams};
use crate::BenchError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationCurve {
    pub depths: Vec<usize>,
    /// Seed of each instance.
    pub seeds: Vec<u64>,
    /// `ticks[i][k]`: condition ticks of instance `i` at `depths[k]`.
    pub ticks: Vec<Vec<u64>>,
    pub mean: Vec<f64>,
}

/// Plans `instances` instances once each and reassembles the tree at every
/// depth, so all depths share the same searches.
pub fn ablate_depth(
    params: &GenParams,
    instances: usize,
    depths: &[usize],
) -> Result<AblationCurve, BenchError> {
    if depths.is_empty() {
        return Err(BenchError::NoDepths);
    }
    params.validate()?;
    let seeds: Vec<u64> = (0..instances)
        .map(|i| params.seed.wrapping_add(i as u64))
        .collect();
    let ticks = seeds
        .par_iter()
        .map(|&seed| instance_ticks(&params.clone().with_seed(seed), depths))
        .collect::<Result<Vec<_>, _>>()?;
    let mean = (0..depths.len())
        .map(|k| ticks.iter().map(|t| t[k] as f64).sum::<f64>() / ticks.len().max(1) as f64)
        .collect();
    Ok(AblationCurve {
        depths: depths.to_vec(),
        seeds,
        ticks,
        mean,
    })
}

fn instance_ticks(params: &GenParams, depths: &[usize]) -> Result<Vec<u64>, BenchError> {
    let inst = generate(params)?;
    let plans = inst
        .subgoals
        .iter()
        .map(|g| plan_subgoal(g, &inst.s0, &inst.domain))
        .collect::<Result<Vec<_>, _>>()?;
    depths
        .iter()
        .map(|&d| {
            let outcomes = plans
                .iter()
                .enumerate()
                .map(|(index, p)| SubgoalOutcome {
                    index,
                    goal: p.goal.clone(),
                    tree: compact(&p.tree, d),
                    cost: p.cost,
                })
                .collect();
            let (tree, _) = assemble(outcomes, true)?;
            let trace = simulate(&tree, &inst.s0, &inst.domain, MAX_ROOT_TICKS)
                .map_err(|e| BenchError::Execution(e.to_string()))?;
            Ok(trace.condition_ticks)
        })
        .collect()
}

impl AblationCurve {
    /// Two columns: `depth,mean_condition_ticks`.
    pub fn write_csv(&self, out: impl Write) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["depth", "mean_condition_ticks"])?;
        for (d, m) in self.depths.iter().zip(&self.mean) {
            w.write_record([d.to_string(), format!("{m:.3}")])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Instances whose ticks rise somewhere along increasing depth.
    pub fn non_monotone(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.depths.len()).collect();
        order.sort_by_key(|&k| self.depths[k]);
        (0..self.ticks.len())
            .filter(|&i| {
                order
                    .windows(2)
                    .any(|w| self.ticks[i][w[1]] > self.ticks[i][w[0]])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{run_method, MethodName};

    #[test]
    fn depth_zero_matches_no_compaction() {
        let p = GenParams::small().with_seed(11);
        let curve = ablate_depth(&p, 5, &[0, 4]).unwrap();
        for (i, &seed) in curve.seeds.iter().enumerate() {
            let inst = generate(&p.clone().with_seed(seed)).unwrap();
            let nc = run_method(
                MethodName::ObteaNc,
                &inst.subgoals,
                &inst.s0,
                &inst.domain,
                0,
            );
            let ob = run_method(MethodName::Obtea, &inst.subgoals, &inst.s0, &inst.domain, 4);
            assert_eq!(Some(curve.ticks[i][0]), nc.condition_ticks);
            assert_eq!(Some(curve.ticks[i][1]), ob.condition_ticks);
        }
    }

    #[test]
    fn csv_has_one_row_per_depth() {
        let curve = ablate_depth(&GenParams::small(), 3, &[0, 1, 2, 3, 4]).unwrap();
        let mut buf = Vec::new();
        curve.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().next(), Some("depth,mean_condition_ticks"));
    }

    #[test]
    fn empty_depths_are_rejected() {
        assert!(matches!(
            ablate_depth(&GenParams::small(), 1, &[]),
            Err(BenchError::NoDepths)
        ));
    }
}
