//! Numeric scaffolding shared by the construction routines.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("1/c must be a positive integer, got c = {0}")]
    BadC(f64),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
}

/// The constants (c, eps, d, n) every construction threads through, with the
/// derived quantities recomputed on demand so they can never go stale.
#[derive(Debug, Clone, Copy)]
pub struct ParamSet {
    pub c: f64,
    pub eps: f64,
    /// Mass-floor fraction: bases are required to hold at least d*n vertices
    /// (scaled further by the routine-specific factors).
    pub d: f64,
    /// Order of the ambient graph.
    pub n: usize,
}

impl ParamSet {
    pub fn new(c: f64, eps: f64, d: f64, n: usize) -> Result<ParamSet, ParamError> {
        check_c(c)?;
        if !(eps > 0.0) {
            return Err(ParamError::NotPositive("eps"));
        }
        if !(d > 0.0) {
            return Err(ParamError::NotPositive("d"));
        }
        Ok(ParamSet { c, eps, d, n })
    }

    pub fn inv_c(&self) -> usize {
        (1.0 / self.c).round() as usize
    }

    /// r = 2 + 1/c.
    pub fn r(&self) -> usize {
        2 + self.inv_c()
    }

    /// rho = n^c.
    pub fn rho(&self) -> f64 {
        (self.n as f64).powf(self.c)
    }

    /// k_i = r^i - 1. Saturates instead of overflowing; callers only use
    /// small indices.
    pub fn k_seq(&self, i: u32) -> usize {
        (self.r() as u64).saturating_pow(i).saturating_sub(1) as usize
    }

    /// d_i = r^(2i) * eps.
    pub fn d_seq(&self, i: u32) -> f64 {
        (self.r() as f64).powi(2 * i as i32) * self.eps
    }

    /// w_h = (4p)^(-h) * d.
    pub fn w_h(&self, h: u32, p: usize) -> f64 {
        self.d * (4.0 * p as f64).powi(-(h as i32))
    }

    /// Same constants over an induced subgraph of order `n`.
    pub fn with_n(&self, n: usize) -> ParamSet {
        ParamSet { n, ..*self }
    }

    pub fn with_d(&self, d: f64) -> ParamSet {
        ParamSet { d, ..*self }
    }

    pub fn with_eps(&self, eps: f64) -> ParamSet {
        ParamSet { eps, ..*self }
    }
}

pub fn check_c(c: f64) -> Result<usize, ParamError> {
    if !(c > 0.0) {
        return Err(ParamError::BadC(c));
    }
    let inv = 1.0 / c;
    if (inv - inv.round()).abs() > 1e-9 || inv.round() < 1.0 {
        return Err(ParamError::BadC(c));
    }
    Ok(inv.round() as usize)
}
