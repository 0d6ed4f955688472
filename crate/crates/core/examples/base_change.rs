//! Pullback along a ring map and pushforward along a finite free extension.

use mfwork::error::Result;
use mfwork::functors::{pullback, pushforward, FiniteExtension, RingMap};
use mfwork::matrix::Matrix;
use mfwork::mf::{MatrixFactorization, Potential};
use mfwork::ring::{Field, PolyRing, RingPresentation};

fn main() -> Result<()> {
    let r = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["x", "y"]));
    let w = Potential::parse(&r, "x*y")?;
    let m = MatrixFactorization::new(&w, Matrix::parse(&r, "1x1 [x]")?, Matrix::parse(&r, "1x1 [y]")?)?;

    // The diagonal x, y -> t turns xy into t^2.
    let line = RingPresentation::polynomial(&PolyRing::new(Field::Rational, &["t"]));
    let diag = RingMap::parse(&r, &line, &["t", "t"])?;
    let d = pullback(&diag, &m)?;
    println!("diagonal pullback: ({}, {}) over w = {}", d.phi, d.psi, d.potential.w());

    // Q[x,y] -> Q[x,y][t]/(t^2 - x) is free of rank 2.
    let ext = FiniteExtension::new(&r, "t", "t^2 - x")?;
    println!("extension {} of degree {}", ext.top, ext.degree());
    let images = (0..2).map(|k| ext.embed(&r.var(k))).collect();
    let up = pullback(&RingMap::new(&r, &ext.top, images)?, &m)?;
    let down = pushforward(&ext, &w, &up)?;
    println!("pushforward of the lift has rank {}: ({}, {})", down.rank(), down.phi, down.psi);
    println!("valid: {}", down.validate().is_none());
    Ok(())
}
