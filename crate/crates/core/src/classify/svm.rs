//! Linear SVM trained by Pegasos-style stochastic subgradient descent.
//!
//! Minimizes `(lambda / 2) |w|^2 + (1 / n) Σ max(0, 1 - y_i (w·x_i + b))`
//! with step `1 / (lambda t)`, projection of `w` onto the ball of radius
//! `1 / sqrt(lambda)`, and an unregularized intercept. The returned weights
//! average the end-of-epoch iterates over the second half of training.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::nb::check_training_set;
use super::vectorize::SparseVector;
use crate::corpus::StanceLabel;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            lambda: 1e-4,
            epochs: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl SvmModel {
    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn margin(&self, x: &SparseVector) -> Result<f64> {
        x.check_dimension(self.dimension())?;
        Ok(x.dot(&self.weights) + self.bias)
    }

    /// Sign of the margin; zero maps to left.
    pub fn predict(&self, x: &SparseVector) -> Result<(StanceLabel, f64)> {
        let m = self.margin(x)?;
        Ok((StanceLabel::from_score(m), m))
    }
}

pub fn predict_svm(model: &SvmModel, x: &SparseVector) -> Result<(StanceLabel, f64)> {
    model.predict(x)
}

/// The regularized hinge objective at `(weights, bias)`.
pub fn objective(weights: &[f64], bias: f64, lambda: f64, matrix: &[SparseVector], labels: &[StanceLabel]) -> f64 {
    let reg = 0.5 * lambda * weights.iter().map(|w| w * w).sum::<f64>();
    let hinge: f64 = matrix
        .iter()
        .zip(labels)
        .map(|(x, y)| (1.0 - y.sign() * (x.dot(weights) + bias)).max(0.0))
        .sum();
    reg + hinge / matrix.len() as f64
}

/// `w = scale * v`, so the per-step shrink is O(1).
struct ScaledWeights {
    v: Vec<f64>,
    scale: f64,
    sq_norm: f64,
}

impl ScaledWeights {
    fn dot(&self, x: &SparseVector) -> f64 {
        self.scale * x.dot(&self.v)
    }

    fn shrink(&mut self, factor: f64) {
        if factor == 0.0 {
            self.v.iter_mut().for_each(|v| *v = 0.0);
            self.scale = 1.0;
            self.sq_norm = 0.0;
            return;
        }
        self.scale *= factor;
        self.sq_norm *= factor * factor;
        if self.scale < 1e-9 {
            self.flush();
        }
    }

    fn add(&mut self, x: &SparseVector, step: f64) {
        for (j, xj) in x.iter() {
            let old = self.scale * self.v[j];
            let new = old + step * xj;
            self.sq_norm += new * new - old * old;
            self.v[j] = new / self.scale;
        }
    }

    fn flush(&mut self) {
        let s = self.scale;
        self.v.iter_mut().for_each(|v| *v *= s);
        self.scale = 1.0;
        self.sq_norm = self.v.iter().map(|v| v * v).sum();
    }

    #[cfg(test)]
    fn to_dense(&self) -> Vec<f64> {
        self.v.iter().map(|v| v * self.scale).collect()
    }
}

pub fn train_svm(matrix: &[SparseVector], labels: &[StanceLabel], cfg: &SvmConfig) -> Result<SvmModel> {
    if !(cfg.lambda.is_finite() && cfg.lambda > 0.0) {
        return Err(Error::Config(alloc::format!(
            "lambda must be positive, got {}",
            cfg.lambda
        )));
    }
    if cfg.epochs == 0 {
        return Err(Error::Config("epochs must be at least 1".into()));
    }
    let dim = check_training_set(matrix, labels)?;
    let n = matrix.len();
    let radius = 1.0 / libm::sqrt(cfg.lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut w = ScaledWeights {
        v: alloc::vec![0.0; dim],
        scale: 1.0,
        sq_norm: 0.0,
    };
    let mut bias = 0.0;
    let first_averaged = cfg.epochs / 2;
    let mut avg_w = alloc::vec![0.0; dim];
    let mut avg_b = 0.0;
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0usize;
    for epoch in 0..cfg.epochs {
        shuffle(&mut order, &mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (cfg.lambda * t as f64);
            let y = labels[i].sign();
            let violated = y * (w.dot(&matrix[i]) + bias) < 1.0;
            w.shrink(1.0 - 1.0 / t as f64);
            if violated {
                w.add(&matrix[i], eta * y);
                bias += eta * y;
            }
            let norm = libm::sqrt(w.sq_norm.max(0.0));
            if norm > radius {
                w.shrink(radius / norm);
            }
        }
        if epoch >= first_averaged {
            w.flush();
            for (a, v) in avg_w.iter_mut().zip(&w.v) {
                *a += v;
            }
            avg_b += bias;
        }
    }
    let snapshots = (cfg.epochs - first_averaged) as f64;
    Ok(SvmModel {
        weights: avg_w.into_iter().map(|a| a / snapshots).collect(),
        bias: avg_b / snapshots,
        lambda: cfg.lambda,
        epochs: cfg.epochs,
        seed: cfg.seed,
    })
}

fn shuffle(order: &mut [usize], rng: &mut ChaCha8Rng) {
    use rand::Rng;
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
}
