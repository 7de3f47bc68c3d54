//! Many independent constructions or verifications at once.

use std::sync::Arc;

use crate::construct::parallel_d_stable;
use crate::error::Result;
use crate::exec::Execution;
use crate::graph::Graph;
use crate::trace::{DoubleTrace, StabilityReport};

/// One `(graph, d)` construction request.
#[derive(Debug, Clone)]
pub struct Job {
    pub graph: Arc<Graph>,
    pub order: usize,
}

/// Runs [`parallel_d_stable`] on every job; results keep the job order.
pub fn construct_all(jobs: &[Job], exec: Execution) -> Vec<Result<DoubleTrace>> {
    exec.map_slice(jobs, |job| parallel_d_stable(&job.graph, job.order))
}

/// Stability reports of every trace at order `d`. Each report is itself
/// computed sequentially so the fan-out happens at one level only.
pub fn verify_all(
    traces: &[DoubleTrace],
    d: usize,
    exec: Execution,
) -> Vec<Result<StabilityReport>> {
    exec.map_slice(traces, |w| {
        w.stability_report_with(d, Execution::Sequential)
    })
}

/// Constructs every job and checks the result at its own order.
pub fn construct_and_verify(jobs: &[Job], exec: Execution) -> Vec<Result<StabilityReport>> {
    exec.map_slice(jobs, |job| {
        parallel_d_stable(&job.graph, job.order)
            .and_then(|w| w.stability_report_with(job.order, Execution::Sequential))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn sequential_and_parallel_agree() {
        let jobs: Vec<Job> = (6..=12)
            .map(|n| Job {
                graph: Arc::new(corpus::circulant(n, &[1, 2]).unwrap()),
                order: 2,
            })
            .collect();
        let seq = construct_all(&jobs, Execution::Sequential);
        let par = construct_all(&jobs, Execution::Parallel);
        assert_eq!(seq, par);
        let traces: Vec<DoubleTrace> = seq.into_iter().map(Result::unwrap).collect();
        assert!(verify_all(&traces, 2, Execution::default())
            .into_iter()
            .all(|r| r.unwrap().stable));
    }
}
