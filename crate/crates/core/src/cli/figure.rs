//! Data behind the published figures: simulated histograms against densities,
//! and Maclaurin-series curves against densities.

use crate::error::{Error, Result};
use crate::walks::{density_for_table, feynman, histogram_fd, rayleigh_approx, simulate, RoutePolicy};
use rayon::prelude::*;
use std::str::FromStr;

pub const FIGURE_SAMPLES: usize = 100_000;
/// Density curves are sampled at multiples of 1/20.
pub const GRID_PER_UNIT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    P5Histogram,
    P3Histogram,
    P4Histogram,
    P6Histogram,
    P7Histogram,
    P8Histogram,
    P5Taylor,
    P9Taylor,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::P5Histogram,
        FigureId::P3Histogram,
        FigureId::P4Histogram,
        FigureId::P6Histogram,
        FigureId::P7Histogram,
        FigureId::P8Histogram,
        FigureId::P5Taylor,
        FigureId::P9Taylor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::P5Histogram => "1b",
            FigureId::P3Histogram => "3a",
            FigureId::P4Histogram => "3b",
            FigureId::P6Histogram => "5a",
            FigureId::P7Histogram => "5b",
            FigureId::P8Histogram => "5c",
            FigureId::P5Taylor => "p5taylor",
            FigureId::P9Taylor => "p9taylor",
        }
    }

    pub fn steps(self) -> u32 {
        match self {
            FigureId::P5Histogram | FigureId::P5Taylor => 5,
            FigureId::P3Histogram => 3,
            FigureId::P4Histogram => 4,
            FigureId::P6Histogram => 6,
            FigureId::P7Histogram => 7,
            FigureId::P8Histogram => 8,
            FigureId::P9Taylor => 9,
        }
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown figure '{s}'; expected 1b, 3a, 3b, 5a, 5b, 5c, p5taylor or p9taylor")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Bars,
    Solid,
    Dashed,
    Dotted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: &'static str,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
    /// Bar width for `Style::Bars`.
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub id: FigureId,
    pub title: String,
    pub series: Vec<Series>,
}

fn grid(last: u32) -> Vec<f64> {
    (0..=last).map(|i| i as f64 / GRID_PER_UNIT as f64).collect()
}

fn curve(name: &'static str, style: Style, xs: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Series> {
    let ys: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    Ok(Series { name, style, points: xs.iter().copied().zip(ys).collect(), width: 0.0 })
}

/// Build the series of a figure; histograms use `seed`.
pub fn build(id: FigureId, seed: u64, tol: f64) -> Result<Figure> {
    let n = id.steps();
    let density = |x: f64| density_for_table(n, x, RoutePolicy::Best, tol);
    let mut series = Vec::new();
    let title = match id {
        FigureId::P5Taylor | FigureId::P9Taylor => {
            // the damped-moment integrals converge for x < 3
            let xs = grid(3 * GRID_PER_UNIT - 1);
            series.push(curve("density", Style::Solid, &xs, density)?);
            series.push(curve("maclaurin", Style::Dotted, &xs, |x| Ok(feynman(n, x, tol)?.value))?);
            format!("p_{n}(x) and its Maclaurin series on [0, 3)")
        }
        _ => {
            let sample = simulate(n, FIGURE_SAMPLES, seed)?;
            let h = histogram_fd(&sample.distances)?;
            let bars = h.centers().into_iter().zip(h.densities.iter().copied()).collect();
            series.push(Series { name: "histogram", style: Style::Bars, points: bars, width: h.bin_width });
            let xs = grid(n * GRID_PER_UNIT);
            series.push(curve("density", Style::Solid, &xs, density)?);
            if n >= 6 {
                series.push(curve("rayleigh", Style::Dashed, &xs, |x| Ok(rayleigh_approx(n, x)))?);
            }
            format!("{FIGURE_SAMPLES} simulated {n}-step walks (seed {seed}) and p_{n}(x)")
        }
    };
    Ok(Figure { id, title, series })
}
