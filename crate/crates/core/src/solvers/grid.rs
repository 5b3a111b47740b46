use rayon::prelude::*;

use super::{solve, InitialData, Problem};
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest {
    pub problem: Problem,
    pub y_levels: Vec<f64>,
    pub spatial_points: Vec<f64>,
    pub data: InitialData,
    pub cfg: QuadratureConfig,
}

impl SolveRequest {
    pub fn validate(&self) -> Result<()> {
        for &y in &self.y_levels {
            ensure_positive("y level", y)?;
        }
        for &x in &self.spatial_points {
            ensure_finite("spatial point", x)?;
            if x == 0.0 && matches!(self.problem, Problem::Euler(_)) {
                return Err(Error::DegenerateCharacteristic { coordinate: x });
            }
        }
        self.cfg.validate()?;
        self.data.admissible(&self.problem)
    }
}

/// A cell whose solver returned an error.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub level: usize,
    pub point: usize,
    pub error: Error,
}

/// Solution values over `y_levels × spatial_points`, stored row-major (one
/// row per level). Failed cells hold NaN with an infinite error estimate and
/// are listed in `failures`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionGrid {
    pub y_levels: Vec<f64>,
    pub spatial_points: Vec<f64>,
    pub values: Vec<f64>,
    pub error_estimates: Vec<f64>,
    pub converged: Vec<bool>,
    pub failures: Vec<CellFailure>,
}

impl SolutionGrid {
    fn index(&self, level: usize, point: usize) -> usize {
        level * self.spatial_points.len() + point
    }

    pub fn value(&self, level: usize, point: usize) -> f64 {
        self.values[self.index(level, point)]
    }

    pub fn error_estimate(&self, level: usize, point: usize) -> f64 {
        self.error_estimates[self.index(level, point)]
    }

    pub fn is_converged(&self, level: usize, point: usize) -> bool {
        self.converged[self.index(level, point)]
    }

    pub fn all_converged(&self) -> bool {
        self.failures.is_empty() && self.converged.iter().all(|&c| c)
    }
}

/// Solves every cell of the request in parallel. Per-cell errors are
/// recorded, not propagated; only an invalid request is an error.
pub fn solve_grid(req: &SolveRequest) -> Result<SolutionGrid> {
    req.validate()?;
    let np = req.spatial_points.len();
    let cells: Vec<_> = (0..req.y_levels.len() * np)
        .into_par_iter()
        .map(|i| {
            let (y, x) = (req.y_levels[i / np], req.spatial_points[i % np]);
            solve(&req.problem, &req.data, y, x, &req.cfg)
        })
        .collect();
    let mut grid = SolutionGrid {
        y_levels: req.y_levels.clone(),
        spatial_points: req.spatial_points.clone(),
        values: Vec::with_capacity(cells.len()),
        error_estimates: Vec::with_capacity(cells.len()),
        converged: Vec::with_capacity(cells.len()),
        failures: Vec::new(),
    };
    for (i, cell) in cells.into_iter().enumerate() {
        match cell {
            Ok(e) => {
                grid.values.push(e.value);
                grid.error_estimates.push(e.error_estimate);
                grid.converged.push(e.converged);
            }
            Err(error) => {
                grid.values.push(f64::NAN);
                grid.error_estimates.push(f64::INFINITY);
                grid.converged.push(false);
                grid.failures.push(CellFailure {
                    level: i / np,
                    point: i % np,
                    error,
                });
            }
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::OscillatorParam;
    use crate::solvers::solve_dirac;

    fn request(problem: Problem, data: InitialData, ys: &[f64], xs: &[f64]) -> SolveRequest {
        SolveRequest {
            problem,
            y_levels: ys.to_vec(),
            spatial_points: xs.to_vec(),
            data,
            cfg: QuadratureConfig::default(),
        }
    }

    #[test]
    fn single_cell_matches_scalar_solver() {
        let data = InitialData::Gaussian { center: 0.5, width: 0.7 };
        let g = solve_grid(&request(Problem::Dirac, data.clone(), &[0.4], &[0.1])).unwrap();
        let s = solve_dirac(&data, 0.4, 0.1, &QuadratureConfig::default()).unwrap();
        assert_eq!(g.value(0, 0), s.value);
        assert_eq!(g.error_estimate(0, 0), s.error_estimate);
    }

    #[test]
    fn dirac_exponential_levels() {
        let data = InitialData::Exponential { rate: 1.0 };
        let g = solve_grid(&request(Problem::Dirac, data, &[1.0, 2.0], &[0.0])).unwrap();
        assert!((g.value(0, 0) - (-1.0f64).exp()).abs() < 1e-10);
        assert!((g.value(1, 0) - (-2.0f64).exp()).abs() < 1e-10);
        assert!(g.all_converged());
    }

    #[test]
    fn oscillator_ground_state_levels() {
        let a = OscillatorParam::new(1.0).unwrap();
        let data = InitialData::Eigenfunction { n: 0, a };
        let g = solve_grid(&request(Problem::Oscillator(a), data, &[0.5, 1.0], &[0.0])).unwrap();
        assert!((g.value(0, 0) - (-0.5f64).exp()).abs() < 1e-9);
        assert!((g.value(1, 0) - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn invalid_requests_are_rejected() {
        let a = OscillatorParam::new(1.0).unwrap();
        let data = InitialData::Power { exponent: 1.0 };
        assert!(solve_grid(&request(Problem::Euler(a), data.clone(), &[1.0], &[0.0])).is_err());
        assert!(solve_grid(&request(Problem::Euler(a), data, &[0.0], &[1.0])).is_err());
    }
}
