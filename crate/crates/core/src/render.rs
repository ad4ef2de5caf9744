//! SVG drawings of instances and solutions.

use std::fmt::Write as _;

use crate::model::{Color, EdgeClass, EdgeSet, Instance};
use crate::scalar::Scalar;

fn fill(color: Color) -> &'static str {
    match color {
        Color::Red => "#d62728",
        Color::Blue => "#1f77b4",
        Color::Purple => "#9467bd",
    }
}

fn stroke(class: EdgeClass) -> &'static str {
    match class {
        EdgeClass::Red => fill(Color::Red),
        EdgeClass::Blue => fill(Color::Blue),
        EdgeClass::Purple => fill(Color::Purple),
        EdgeClass::Invalid => "#7f7f7f",
    }
}

/// Points as filled circles, edges as strokes colored by class with purple
/// drawn 1.5 times wider. The y axis points up. Output depends only on the
/// inputs.
pub fn render_svg<T: Scalar>(instance: &Instance<T>, edges: &EdgeSet<T>) -> String {
    let xy: Vec<(f64, f64)> = instance.points().iter().map(|p| (p.x.as_f64(), -p.y.as_f64())).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &xy {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.05 * extent;
    let radius = 0.012 * extent;
    let width = 0.004 * extent;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        x0 - margin,
        y0 - margin,
        x1 - x0 + 2.0 * margin,
        y1 - y0 + 2.0 * margin
    )
    .unwrap();
    for e in edges.edges() {
        let (a, b) = (xy[e.u], xy[e.v]);
        let w = if e.class == EdgeClass::Purple { 1.5 * width } else { width };
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            a.0,
            a.1,
            b.0,
            b.1,
            stroke(e.class),
            w
        )
        .unwrap();
    }
    for (p, &(x, y)) in instance.points().iter().zip(&xy) {
        writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{radius}" fill="{}"/>"#, fill(p.color)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Color::*;

    #[test]
    fn e1_drawing() {
        let i = Instance::new([(Purple, 0.0, 0.0), (Purple, 10.0, 0.0), (Red, 4.0, 0.0), (Blue, 6.0, 0.0)]).unwrap();
        let edges = EdgeSet::from_pairs(&i, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let svg = render_svg(&i, &edges);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 3);
        assert!(svg.contains(r#"viewBox="-0.5 -0.5 11 1""#));
        let purple = svg.lines().find(|l| l.contains("#9467bd") && l.starts_with("<line")).unwrap();
        let red = svg.lines().find(|l| l.contains("#d62728") && l.starts_with("<line")).unwrap();
        let width = |l: &str| l.split("stroke-width=\"").nth(1).unwrap().trim_end_matches("\"/>").parse::<f64>().unwrap();
        assert!((width(purple) - 1.5 * width(red)).abs() < 1e-12);
        assert_eq!(svg, render_svg(&i, &edges));
    }

    #[test]
    fn single_point() {
        let i = Instance::new([(Red, 2.0, 3.0)]).unwrap();
        let svg = render_svg(&i, &EdgeSet::empty());
        assert!(svg.contains(r#"viewBox="1.95 -3.05 0.1 0.1""#));
    }
}
