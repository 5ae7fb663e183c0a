//! Plot-ready CSV emission.
//!
//! `fig1.csv` carries the activation curves: softplus with its first two
//! derivatives, then value/d1/d2 for squareplus at each requested `b`.
//! `fig2.csv` carries distance-to-relu for the same grid: how far softplus
//! and squareplus sit above the hinge, plus the same quantity for naive
//! softplus computed end-to-end in single precision — the column that goes
//! to exactly zero once the naive form collapses to the identity.
//!
//! Cells round-trip losslessly (17 significant digits for double columns, 9
//! for the single-precision column). Column labels embed `b` in its shortest
//! exact decimal, e.g. `squareplus_b4`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use squareplus::activations::{
    relu, sigmoid, softplus_naive, softplus_stable, squareplus, squareplus_d1, squareplus_d2,
};
use squareplus::fmt::{f32_lossless, f64_lossless};
use squareplus::verify::GridSpec;

/// Writes `fig1.csv` and `fig2.csv` into `out_dir`, returning the paths.
pub fn write_figures(grid: &GridSpec, bs: &[f64], out_dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let points = grid.points();
    let fig1 = out_dir.join("fig1.csv");
    write_fig1(&fig1, &points, bs)?;
    let fig2 = out_dir.join("fig2.csv");
    write_fig2(&fig2, &points, bs)?;
    Ok(vec![fig1, fig2])
}

/// Shortest exact decimal for a column label: `4`, `0.5`, ...
fn b_label(b: f64) -> String {
    format!("{b}")
}

fn write_fig1(path: &Path, points: &[f64], bs: &[f64]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "x,softplus,softplus_d1,softplus_d2")?;
    for &b in bs {
        let label = b_label(b);
        write!(
            w,
            ",squareplus_b{label},squareplus_b{label}_d1,squareplus_b{label}_d2"
        )?;
    }
    writeln!(w)?;

    for &x in points {
        // softplus' = sigmoid, softplus'' = sigmoid * (1 - sigmoid).
        let sig = sigmoid(x);
        write!(
            w,
            "{},{},{},{}",
            f64_lossless(x),
            f64_lossless(softplus_stable(x)),
            f64_lossless(sig),
            f64_lossless(sig * (1.0 - sig))
        )?;
        for &b in bs {
            write!(
                w,
                ",{},{},{}",
                f64_lossless(squareplus(x, b)),
                f64_lossless(squareplus_d1(x, b)),
                f64_lossless(squareplus_d2(x, b))
            )?;
        }
        writeln!(w)?;
    }
    w.flush()
}

fn write_fig2(path: &Path, points: &[f64], bs: &[f64]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "x,softplus_minus_relu,softplus_naive_single_minus_relu")?;
    for &b in bs {
        write!(w, ",squareplus_b{}_minus_relu", b_label(b))?;
    }
    writeln!(w)?;

    for &x in points {
        // The naive column runs in f32 from input to subtraction: the point
        // is to show where that pipeline loses the gap entirely.
        let xs = x as f32;
        let naive_gap = softplus_naive(xs) - relu(xs);
        write!(
            w,
            "{},{},{}",
            f64_lossless(x),
            f64_lossless(softplus_stable(x) - relu(x)),
            f32_lossless(naive_gap)
        )?;
        for &b in bs {
            write!(w, ",{}", f64_lossless(squareplus(x, b) - relu(x)))?;
        }
        writeln!(w)?;
    }
    w.flush()
}
