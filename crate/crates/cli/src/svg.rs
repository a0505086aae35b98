//! Poincaré disc figures as SVG 1.1.

use std::fmt::Write;

use psc_moduli::lattice::IntegralLattice;
use psc_moduli::wallcross::{disc_project, wall_geodesic, PeriodPoint, WallClass, WallError};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;
const WALL_SAMPLES: usize = 129;

fn screen(p: (f64, f64)) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * p.0, SIZE / 2.0 - RADIUS * p.1)
}

/// The unit circle, the wall geodesic, the labelled orbit points and, if
/// given, the segment from point `n` to point `n + 1` for each `n` in
/// `crossings`.
pub fn render_disc_svg(
    lattice: &IntegralLattice,
    wall: &WallClass,
    points: &[(i64, PeriodPoint)],
    crossings: &[i64],
) -> Result<String, WallError> {
    let projected: Vec<(i64, (f64, f64))> = points
        .iter()
        .map(|(n, p)| Ok((*n, screen(disc_project(lattice, p)?))))
        .collect::<Result<_, WallError>>()?;
    let c = SIZE / 2.0;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r##"<circle id="boundary" cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#000" stroke-width="1.5"/>"##).unwrap();

    let wall_points = wall_geodesic(lattice, wall, WALL_SAMPLES)?;
    if !wall_points.is_empty() {
        let path: Vec<String> = wall_points
            .iter()
            .map(|&p| {
                let (x, y) = screen(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(
            out,
            r##"<polyline id="wall" points="{}" fill="none" stroke="#1f5fbf" stroke-width="2"/>"##,
            path.join(" ")
        )
        .unwrap();
    }

    for &n in crossings {
        let ends = (
            projected.iter().find(|(k, _)| *k == n),
            projected.iter().find(|(k, _)| *k == n + 1),
        );
        if let (Some((_, a)), Some((_, b))) = ends {
            writeln!(
                out,
                r##"<line class="crossing" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c0392b" stroke-width="3"/>"##,
                a.0, a.1, b.0, b.1
            )
            .unwrap();
        }
    }
    for pair in projected.windows(2) {
        let ((_, a), (_, b)) = (pair[0], pair[1]);
        writeln!(
            out,
            r##"<line class="orbit" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#777" stroke-width="0.75"/>"##,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    for (n, (x, y)) in &projected {
        writeln!(
            out,
            r##"<circle class="point" cx="{x:.3}" cy="{y:.3}" r="3" fill="#000"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{n}</text>"#,
            x + 5.0,
            y - 5.0
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
