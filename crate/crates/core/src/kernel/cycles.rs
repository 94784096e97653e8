//! Closed-form cycle model of the matching pipeline.

use serde::Serialize;

use crate::error::{Error, Result};

use super::Variant;

/// Default per-procedure cycle constants `L_1..L_6`: read `P`, generate
/// `p_o`/`t_v`, process `t_v`, collect `p_o`, generate `t_n`, process `t_n`.
pub const DEFAULT_LATENCIES: [f64; 6] = [2.0, 2.0, 1.0, 1.0, 1.0, 1.0];

/// Read-latency multiplier used when the CST is served from DRAM.
pub const DEFAULT_DRAM_RATIO: f64 = 7.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleModel {
    pub latencies: [f64; 6],
    /// `N`: generated partial results, valid or not.
    pub n_total: u64,
    /// `M`: generated edge validation tasks.
    pub m_total: u64,
}

impl Default for CycleModel {
    fn default() -> Self {
        CycleModel {
            latencies: DEFAULT_LATENCIES,
            n_total: 0,
            m_total: 0,
        }
    }
}

impl CycleModel {
    pub fn new(latencies: [f64; 6]) -> Result<Self> {
        if latencies.iter().any(|l| !(l.is_finite() && *l >= 1.0)) {
            return Err(Error::InvalidConfig(format!(
                "cycle constants must be finite and >= 1, got {latencies:?}"
            )));
        }
        Ok(CycleModel {
            latencies,
            ..CycleModel::default()
        })
    }

    pub fn with_counters(mut self, n_total: u64, m_total: u64) -> Self {
        self.n_total = n_total;
        self.m_total = m_total;
        self
    }

    /// All constants multiplied by `ratio` (DRAM-resident CST).
    pub fn scaled(mut self, ratio: f64) -> Self {
        for l in &mut self.latencies {
            *l *= ratio;
        }
        self
    }

    pub fn record(&mut self, outputs: usize, edge_tasks: usize) {
        self.n_total += outputs as u64;
        self.m_total += edge_tasks as u64;
    }

    /// Adds another run's counters.
    pub fn absorb(&mut self, other: &CycleModel) {
        self.n_total += other.n_total;
        self.m_total += other.m_total;
    }

    /// `L_f = L_1 + L_2 + L_3 + L_4`.
    pub fn l_f(&self) -> f64 {
        self.latencies[..4].iter().sum()
    }

    /// `L_t = L_5 + L_6`.
    pub fn l_t(&self) -> f64 {
        self.latencies[4] + self.latencies[5]
    }

    pub fn max_latency(&self) -> f64 {
        self.latencies.iter().copied().fold(0.0, f64::max)
    }

    /// `N·L_f + M·L_t`: no pipelining at all.
    pub fn serial_cycles(&self) -> f64 {
        self.n_total as f64 * self.l_f() + self.m_total as f64 * self.l_t()
    }
}

/// Closed-form estimate of a variant:
///
/// * basic: `(N·L_f + M·L_t)/N_o + 4N + 2M`
/// * task: `2N + max(N, M)`
/// * sep: `N + max(N, M)`
pub fn cycle_estimate(model: &CycleModel, variant: Variant, n_o: usize) -> f64 {
    let n = model.n_total as f64;
    let m = model.m_total as f64;
    match variant {
        Variant::Basic => model.serial_cycles() / n_o as f64 + 4.0 * n + 2.0 * m,
        Variant::Task => 2.0 * n + n.max(m),
        Variant::Sep => n + n.max(m),
    }
}
