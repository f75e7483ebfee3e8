use crate::error::Result;
use crate::geometry::{Frame, Geometry};
use crate::parallel::par_map;

use super::{develop_path_with, DevelopOptions, DrivingNoise, HorizontalPath};

/// Shared shape of a Monte-Carlo ensemble: grid, size, master seed, workers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub horizon: f64,
    pub steps: usize,
    pub paths: usize,
    pub seed: u64,
    /// 0 = rayon default.
    pub workers: usize,
    pub develop: DevelopOptions,
}

impl EnsembleSpec {
    pub fn new(horizon: f64, steps: usize, paths: usize, seed: u64) -> Self {
        EnsembleSpec { horizon, steps, paths, seed, workers: 0, develop: DevelopOptions::default() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_paths(mut self, paths: usize) -> Self {
        self.paths = paths;
        self
    }

    pub fn with_develop(mut self, develop: DevelopOptions) -> Self {
        self.develop = develop;
        self
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn noise(&self, dim: usize, index: usize) -> Result<DrivingNoise> {
        DrivingNoise::generate(self.horizon, self.steps, dim, self.seed, index as u64)
    }

    /// Path `index` started at the canonical frame over the model origin.
    pub fn develop<G: Geometry + ?Sized>(&self, model: &G, index: usize) -> Result<HorizontalPath> {
        let u0 = Frame::at_origin(model)?;
        self.develop_from(model, index, &u0)
    }

    pub fn develop_from<G: Geometry + ?Sized>(&self, model: &G, index: usize, u0: &Frame) -> Result<HorizontalPath> {
        let noise = self.noise(model.dim(), index)?;
        develop_path_with(model, &noise, u0, &self.develop)
    }

    /// Index-ordered parallel map over the ensemble.
    pub fn map<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        par_map(self.workers, self.paths, f)
    }
}
