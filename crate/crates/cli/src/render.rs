//! Deterministic SVG drawings of paths with lasers, polygon dissections and
//! partition chord diagrams.

use std::f64::consts::PI;
use std::fmt::Write;

use ratcat::assoc::{facet, valley_face, Diagonal};
use ratcat::dyck::{DyckPath, Laser, Point};
use ratcat::ncpart::SetPartition;
use ratcat::Result;

const UNIT: i64 = 40;
const MARGIN: i64 = 24;
const RADIUS: f64 = 160.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LaserSet {
    None,
    All,
    Valleys,
}

/// `num / den` rounded half away from zero to six decimals.
pub fn fixed6(num: i128, den: i128) -> String {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let scaled = num * 1_000_000;
    let q = (2 * scaled.abs() + den) / (2 * den);
    let sign = if num < 0 && q != 0 { "-" } else { "" };
    format!("{sign}{}.{:06}", q / 1_000_000, q % 1_000_000)
}

fn float6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Frame {
    height: i64,
}

impl Frame {
    /// Canvas coordinates of the lattice point `(x_num / den, y)`.
    fn at(&self, x_num: i128, den: i128, y: i64) -> (String, String) {
        let px = fixed6(i128::from(MARGIN) * den + x_num * i128::from(UNIT), den);
        let py = fixed6(i128::from(MARGIN + (self.height - y) * UNIT), 1);
        (px, py)
    }

    fn point(&self, p: Point) -> (String, String) {
        self.at(i128::from(p.x), 1, i64::from(p.y))
    }
}

fn header(out: &mut String, width: i64, height: i64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
}

fn laser_sources(path: &DyckPath, set: LaserSet) -> Vec<Point> {
    match set {
        LaserSet::None => Vec::new(),
        LaserSet::All => path.north_bottoms(),
        LaserSet::Valleys => path.valleys(),
    }
}

pub fn lasers(path: &DyckPath, set: LaserSet) -> Result<Vec<Laser>> {
    laser_sources(path, set)
        .into_iter()
        .map(|p| path.fire_laser(p))
        .collect()
}

/// Grid, diagonal, path and lasers. Labels follow the laser set: internal points
/// for `all`, east-step ends for `valleys`.
pub fn dyck_svg(path: &DyckPath, set: LaserSet) -> Result<String> {
    let (a, b) = (i64::from(path.pair().a()), i64::from(path.pair().b()));
    let frame = Frame { height: a };
    let mut out = String::new();
    header(&mut out, 2 * MARGIN + b * UNIT, 2 * MARGIN + a * UNIT);
    writeln!(out, r##"<g stroke="#cccccc" stroke-width="1">"##).unwrap();
    for x in 0..=b {
        let (x0, y0) = frame.at(x.into(), 1, 0);
        let (x1, y1) = frame.at(x.into(), 1, a);
        writeln!(out, r#"<line class="grid" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#).unwrap();
    }
    for y in 0..=a {
        let (x0, y0) = frame.at(0, 1, y);
        let (x1, y1) = frame.at(b.into(), 1, y);
        writeln!(out, r#"<line class="grid" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    let (x0, y0) = frame.at(0, 1, 0);
    let (x1, y1) = frame.at(b.into(), 1, a);
    writeln!(
        out,
        r##"<line class="diagonal" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#888888" stroke-dasharray="4 3"/>"##
    )
    .unwrap();
    let pts: Vec<String> = path
        .points()
        .into_iter()
        .map(|p| {
            let (x, y) = frame.point(p);
            format!("{x},{y}")
        })
        .collect();
    writeln!(
        out,
        r##"<polyline class="path" points="{}" fill="none" stroke="#000000" stroke-width="3"/>"##,
        pts.join(" ")
    )
    .unwrap();
    for laser in lasers(path, set)? {
        let (sx, sy) = frame.point(laser.source);
        let (ex, ey) = frame.at(
            i128::from(*laser.end_x.numer()),
            i128::from(*laser.end_x.denom()),
            i64::from(laser.end_height),
        );
        writeln!(
            out,
            r##"<line class="laser" x1="{sx}" y1="{sy}" x2="{ex}" y2="{ey}" stroke="#d62728" stroke-width="2"/>"##
        )
        .unwrap();
    }
    let labels = match set {
        LaserSet::None => Vec::new(),
        LaserSet::All => path.internal_points(),
        LaserSet::Valleys => path.east_step_ends(),
    };
    for (i, p) in labels.into_iter().enumerate() {
        // Drawn just below and right of the vertex, where the label is taken to sit.
        let (x, y) = frame.at(i128::from(p.x) * 10 + 1, 10, i64::from(p.y));
        writeln!(
            out,
            r#"<text class="label" x="{x}" y="{y}" dy="14" font-size="12" font-family="sans-serif">{}</text>"#,
            i + 1
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

fn circle_points(n: u32) -> Vec<(String, String)> {
    let c = RADIUS + MARGIN as f64;
    (0..n)
        .map(|k| {
            let t = -PI / 2.0 + 2.0 * PI * f64::from(k) / f64::from(n);
            (float6(c + RADIUS * t.cos()), float6(c + RADIUS * t.sin()))
        })
        .collect()
}

fn disk(out: &mut String, n: u32) -> Vec<(String, String)> {
    let side = (2.0 * (RADIUS + MARGIN as f64)) as i64;
    header(out, side, side);
    let pts = circle_points(n);
    let c = float6(RADIUS + MARGIN as f64);
    writeln!(
        out,
        r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#cccccc"/>"##,
        float6(RADIUS)
    )
    .unwrap();
    for (k, (x, y)) in pts.iter().enumerate() {
        writeln!(out, r##"<circle class="vertex" cx="{x}" cy="{y}" r="3" fill="#000000"/>"##).unwrap();
        writeln!(
            out,
            r#"<text class="label" x="{x}" y="{y}" dx="6" dy="-6" font-size="12" font-family="sans-serif">{}</text>"#,
            k + 1
        )
        .unwrap();
    }
    pts
}

/// The polygon with `b+1` vertices, labelled clockwise from the top, with the
/// diagonals of `F(D)`; valley diagonals drawn thicker.
pub fn dissection_svg(path: &DyckPath) -> Result<String> {
    let diagonals = facet(path)?;
    let valleys = valley_face(path)?;
    let n = path.pair().b() + 1;
    let mut out = String::new();
    let pts = disk(&mut out, n);
    let ring: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    writeln!(
        out,
        r##"<polygon class="polygon" points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
        ring.join(" ")
    )
    .unwrap();
    for d in &diagonals {
        let (u, v) = d.endpoints();
        let (x1, y1) = &pts[u as usize - 1];
        let (x2, y2) = &pts[v as usize - 1];
        let width = if valleys.contains(d) { 3 } else { 1 };
        writeln!(
            out,
            r##"<line class="diagonal" data-diagonal="{u},{v}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#1f77b4" stroke-width="{width}"/>"##
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Points `1..=m` clockwise on a circle; each block drawn as the polygon on its elements.
pub fn chords_svg(partition: &SetPartition) -> String {
    let mut out = String::new();
    let pts = disk(&mut out, partition.size());
    for block in partition.blocks() {
        if block.len() < 2 {
            continue;
        }
        let ring: Vec<String> = block
            .iter()
            .map(|&e| {
                let (x, y) = &pts[e as usize - 1];
                format!("{x},{y}")
            })
            .collect();
        let ids: Vec<String> = block.iter().map(u32::to_string).collect();
        writeln!(
            out,
            r##"<polygon class="block" data-block="{}" points="{}" fill="#2ca02c" fill-opacity="0.3" stroke="#2ca02c" stroke-width="2"/>"##,
            ids.join(","),
            ring.join(" ")
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

pub fn diagonals_json(diagonals: &[Diagonal]) -> Vec<[u32; 2]> {
    diagonals.iter().map(|&d| d.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratcat::CoprimePair;

    fn running_example() -> DyckPath {
        DyckPath::parse(CoprimePair::new(5, 8).unwrap(), "NNEENNEEENEEE").unwrap()
    }

    #[test]
    fn fixed_point_formatting() {
        assert_eq!(fixed6(1, 3), "0.333333");
        assert_eq!(fixed6(2, 3), "0.666667");
        assert_eq!(fixed6(-1, 2), "-0.500000");
        assert_eq!(fixed6(34, 5), "6.800000");
        assert_eq!(fixed6(-1, 3_000_000), "0.000000");
        assert_eq!(fixed6(7, -2), "-3.500000");
    }

    #[test]
    fn laser_counts() {
        let d = running_example();
        let all = dyck_svg(&d, LaserSet::All).unwrap();
        assert_eq!(all.matches(r#"class="laser""#).count(), 4);
        assert_eq!(all.matches(r#"class="label""#).count(), 12);
        let valleys = dyck_svg(&d, LaserSet::Valleys).unwrap();
        assert_eq!(valleys.matches(r#"class="laser""#).count(), 2);
        assert_eq!(valleys.matches(r#"class="label""#).count(), 7);
        let none = dyck_svg(&d, LaserSet::None).unwrap();
        assert_eq!(none.matches(r#"class="laser""#).count(), 0);
    }

    #[test]
    fn dissection_diagonals() {
        let svg = dissection_svg(&running_example()).unwrap();
        let mut found: Vec<&str> = svg
            .split(r#"data-diagonal=""#)
            .skip(1)
            .map(|s| &s[..s.find('"').unwrap()])
            .collect();
        found.sort_unstable();
        assert_eq!(found, vec!["1,3", "3,5", "3,8", "6,8"]);
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 9);
    }

    #[test]
    fn chords_skip_singletons() {
        let p = SetPartition::new(7, vec![vec![1, 2, 7], vec![3, 4, 5], vec![6]]).unwrap();
        let svg = chords_svg(&p);
        assert_eq!(svg.matches(r#"class="block""#).count(), 2);
    }

    #[test]
    fn rendering_is_repeatable() {
        let d = running_example();
        assert_eq!(dyck_svg(&d, LaserSet::All).unwrap(), dyck_svg(&d, LaserSet::All).unwrap());
        assert_eq!(dissection_svg(&d).unwrap(), dissection_svg(&d).unwrap());
    }
}
