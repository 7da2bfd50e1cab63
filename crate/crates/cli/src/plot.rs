//! Static pictures of a universe: one column per `a2` level, vertices of a
//! level stacked in enumeration order, edges between adjacent columns.

use std::fmt::Write as _;

use gordian::{ConwayClass, FiniteUniverse};

use crate::commands::CliResult;

pub const DEFAULT_PLOT_CAP: u64 = 500;

const MARGIN: f64 = 40.0;
const COLUMN_GAP: f64 = 90.0;
const ROW_GAP: f64 = 28.0;
const RADIUS: f64 = 5.0;
const SIDE_COLORS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];

/// Vertex indices along the three sides `A -> B`, `B -> C`, `C -> A`, each the
/// first geodesic in enumeration order.
pub fn triangle_sides(u: &FiniteUniverse, corners: [&ConwayClass; 3]) -> CliResult<[Vec<usize>; 3]> {
    let mut sides: [Vec<usize>; 3] = Default::default();
    for (k, side) in sides.iter_mut().enumerate() {
        let (a, b) = (corners[k], corners[(k + 1) % 3]);
        let g = u.enumerate_geodesics(a, b, 1)?;
        let path = g.paths.first().ok_or("no geodesic between corners")?;
        *side = path.vertices().iter().map(|v| u.index_of(v)).collect::<Result<_, _>>()?;
    }
    Ok(sides)
}

pub struct Layout {
    positions: Vec<(f64, f64)>,
    width: f64,
    height: f64,
}

impl Layout {
    pub fn new(u: &FiniteUniverse) -> Self {
        let w = u.width().max(1);
        let lo = u.params().a2_min;
        let positions: Vec<(f64, f64)> = (0..u.len())
            .map(|i| {
                let column = (u.level_of(i) - lo) as f64;
                let slot = (i % w) as f64;
                (MARGIN + column * COLUMN_GAP, MARGIN + slot * ROW_GAP)
            })
            .collect();
        let width = 2.0 * MARGIN + (u.level_count().saturating_sub(1)) as f64 * COLUMN_GAP;
        let height = 2.0 * MARGIN + (w - 1) as f64 * ROW_GAP + 20.0;
        Self { positions, width, height }
    }

    fn edges(u: &FiniteUniverse) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = u.width();
        (0..u.len()).flat_map(move |i| {
            let next_level = (i / w + 1) * w;
            (next_level..(next_level + w).min(u.len())).map(move |j| (i, j))
        })
    }

    pub fn svg(&self, u: &FiniteUniverse, triangle: Option<&[Vec<usize>; 3]>) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
            self.width, self.height, self.width, self.height
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        s.push_str("<g class=\"edges\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
        for (i, j) in Self::edges(u) {
            let ((x1, y1), (x2, y2)) = (self.positions[i], self.positions[j]);
            let _ = writeln!(s, r#"<line class="edge" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        s.push_str("</g>\n");
        if let Some(sides) = triangle {
            s.push_str("<g class=\"triangle\" fill=\"none\" stroke-width=\"3\">\n");
            for (k, side) in sides.iter().enumerate() {
                let points: Vec<String> =
                    side.iter().map(|&i| format!("{},{}", self.positions[i].0, self.positions[i].1)).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline class="side side-{k}" stroke="{}" points="{}"/>"#,
                    SIDE_COLORS[k],
                    points.join(" ")
                );
            }
            s.push_str("</g>\n");
        }
        s.push_str("<g class=\"vertices\" fill=\"black\">\n");
        for (i, &(x, y)) in self.positions.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<circle class="vertex" cx="{x}" cy="{y}" r="{RADIUS}"><title>{}</title></circle>"#,
                u.vertex(i).poly().to_list_string()
            );
        }
        s.push_str("</g>\n");
        if let Some(sides) = triangle {
            for side in sides {
                let (x, y) = self.positions[side[0]];
                let _ = writeln!(
                    s,
                    r#"<circle class="corner" cx="{x}" cy="{y}" r="{}" fill="none" stroke="black" stroke-width="2"/>"#,
                    RADIUS + 4.0
                );
            }
        }
        let axis_y = self.height - 12.0;
        for n in u.params().a2_min..=u.params().a2_max {
            let x = MARGIN + (n - u.params().a2_min) as f64 * COLUMN_GAP;
            let _ = writeln!(
                s,
                r#"<text class="axis" x="{x}" y="{axis_y}" text-anchor="middle" font-size="12">a2={n}</text>"#
            );
        }
        s.push_str("</svg>\n");
        s
    }

    /// One row per vertex, then one row per edge.
    pub fn csv(&self, u: &FiniteUniverse) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "source", "target", "a2", "x", "y"])?;
        for (i, &(x, y)) in self.positions.iter().enumerate() {
            w.write_record([
                "vertex".to_string(),
                u.vertex(i).poly().to_list_string(),
                String::new(),
                u.level_of(i).to_string(),
                x.to_string(),
                y.to_string(),
            ])?;
        }
        for (i, j) in Self::edges(u) {
            w.write_record([
                "edge",
                &u.vertex(i).poly().to_list_string(),
                &u.vertex(j).poly().to_list_string(),
                "",
                "",
                "",
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}
