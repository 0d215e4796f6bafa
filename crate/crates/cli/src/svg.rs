//! Static SVG of the obstacle, the axial caustic, rays and their axis crossings.
//!
//! Drawn in the scene frame: the incidence axis runs left to right, the
//! ray plane's transverse coordinate points up.

use std::fmt::Write as _;

use creepwave::geometry::{ObstacleScene, RayPath, Segment};
use creepwave::Sense;

pub struct DrawnRay<'a> {
    pub ray: &'a RayPath,
    pub sense: Sense,
    pub tours: u32,
    pub crossings: Vec<[f64; 3]>,
}

fn project(scene: &ObstacleScene, p: [f64; 3]) -> (f64, f64) {
    let l = scene.to_local(p);
    (l[2], -l[0])
}

fn samples(seg: &Segment) -> usize {
    match *seg {
        Segment::Straight { .. } => 1,
        Segment::Arc { ang0, ang1, .. } => ((ang1 - ang0).abs() * 48.0).ceil().max(2.0) as usize,
    }
}

pub fn render(scene: &ObstacleScene, rays: &[DrawnRay]) -> String {
    let r = scene.radius();
    let mut polylines = Vec::new();
    let (mut x0, mut x1, mut y0, mut y1) = (-1.5 * r, 1.5 * r, -1.5 * r, 1.5 * r);
    for d in rays {
        let mut pts = Vec::new();
        for (i, seg) in d.ray.segments.iter().enumerate() {
            let n = samples(seg);
            for j in usize::from(i > 0)..=n {
                pts.push(project(scene, seg.point(j as f64 / n as f64)));
            }
        }
        for &(x, y) in pts.iter().chain(d.crossings.iter().map(|&c| project(scene, c)).collect::<Vec<_>>().iter()) {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        polylines.push(pts);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let width = 800.0;
    let height = (width * vh / vw).round();
    let stroke = 0.003 * vw.max(vh);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}" width="{width}" height="{height}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="{vx:.6}" y="{vy:.6}" width="{vw:.6}" height="{vh:.6}" fill="white"/>"#).unwrap();
    writeln!(s, r##"<circle class="obstacle" cx="0" cy="0" r="{r:.6}" fill="#dddddd" stroke="black" stroke-width="{stroke:.6}"/>"##).unwrap();
    writeln!(
        s,
        r##"<line class="caustic" x1="{vx:.6}" y1="0" x2="{:.6}" y2="0" stroke="#888888" stroke-width="{stroke:.6}" stroke-dasharray="{:.6} {:.6}"/>"##,
        vx + vw,
        4.0 * stroke,
        3.0 * stroke
    )
    .unwrap();
    for (d, pts) in rays.iter().zip(&polylines) {
        let colour = match d.sense {
            Sense::Counterclockwise => "#1f5fbf",
            Sense::Clockwise => "#bf3f1f",
        };
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.6},{y:.6}")).collect();
        writeln!(
            s,
            r#"<polyline class="ray" data-sense="{}" data-tours="{}" points="{}" fill="none" stroke="{colour}" stroke-width="{:.6}"/>"#,
            d.sense.symbol(),
            d.tours,
            list.join(" "),
            1.5 * stroke
        )
        .unwrap();
    }
    for d in rays {
        for &c in &d.crossings {
            let (x, y) = project(scene, c);
            writeln!(
                s,
                r#"<circle class="crossing" data-sense="{}" data-tours="{}" cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"/>"#,
                d.sense.symbol(),
                d.tours,
                4.0 * stroke
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
