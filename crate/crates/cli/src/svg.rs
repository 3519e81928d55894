//! SVG rendering of the two-panel figure: the weight-space picture (LCT
//! polytope dark, KLT region light, jumping-wall facets as solid segments)
//! and the s-space picture of the bound components on sign-flipped axes.
//!
//! Geometry is computed exactly; only the emitted pixel coordinates are
//! decimal (6 significant digits, presentation only). Shapes carry their
//! exact rational data in `data-*` attributes.

use bsloci::{rat, render_rat, AffineForm, Component, Rat};
use num::{Signed, ToPrimitive, Zero};
use std::fmt::Write as _;

pub struct Scene {
    /// Free-coordinate labels, e.g. ("lambda1", "lambda2").
    pub axis_labels: (String, String),
    pub box_lo: Vec<Rat>,
    pub box_hi: Vec<Rat>,
    /// Convex polygon vertices (unordered; ordered before drawing).
    pub lct: Vec<Vec<Rat>>,
    pub klt: Vec<Vec<Rat>>,
    /// Wall segments [(p, q, exact form)].
    pub jump_segments: Vec<(Vec<Rat>, Vec<Rat>, AffineForm)>,
    /// Lower-bound components for the s-space panel.
    pub components: Vec<Component>,
    /// Optional reference components, drawn dashed.
    pub reference: Vec<Component>,
}

fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    let dec = (5 - mag).max(0) as usize;
    let mut s = format!("{v:.dec$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
}

struct Panel {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Panel {
    fn map(&self, p: &[Rat]) -> (f64, f64) {
        let fx = (to_f64(&p[0]) - self.lo.0) / (self.hi.0 - self.lo.0);
        let fy = (to_f64(&p[1]) - self.lo.1) / (self.hi.1 - self.lo.1);
        (self.x0 + fx * self.w, self.y0 + self.h - fy * self.h)
    }
}

/// Orders the vertices of a convex polygon counterclockwise around their
/// centroid; exact comparisons throughout.
fn convex_order(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let n = Rat::from_integer((points.len() as i64).into());
    let cx: Rat = points.iter().map(|p| p[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = points.iter().map(|p| p[1].clone()).sum::<Rat>() / &n;
    let half = |p: &Vec<Rat>| -> u8 {
        let dx = &p[0] - &cx;
        let dy = &p[1] - &cy;
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    let mut ordered = points.to_vec();
    ordered.sort_by(|p, q| {
        half(p).cmp(&half(q)).then_with(|| {
            // counterclockwise: p before q if cross(p - c, q - c) > 0
            let cross = &(&(&p[0] - &cx) * &(&q[1] - &cy)) - &(&(&p[1] - &cy) * &(&q[0] - &cx));
            Rat::zero().cmp(&cross)
        })
    });
    ordered
}

fn polygon_attr(points: &[Vec<Rat>], panel: &Panel) -> (String, String) {
    let ordered = convex_order(points);
    let pix = ordered
        .iter()
        .map(|p| {
            let (x, y) = panel.map(p);
            format!("{},{}", sig6(x), sig6(y))
        })
        .collect::<Vec<_>>()
        .join(" ");
    let exact = ordered
        .iter()
        .map(|p| format!("{},{}", render_rat(&p[0]), render_rat(&p[1])))
        .collect::<Vec<_>>()
        .join(";");
    (pix, exact)
}

fn form_attr(form: &AffineForm) -> String {
    let coeffs = form
        .coeffs
        .iter()
        .map(render_rat)
        .collect::<Vec<_>>()
        .join(",");
    format!("{}:{}", coeffs, render_rat(&form.constant))
}

/// Endpoints of the segment `coeffs . u = value` clipped to [lo, hi]^2, if
/// the line meets the box; exact.
fn clip_line(
    coeffs: &[Rat; 2],
    value: &Rat,
    lo: &[Rat; 2],
    hi: &[Rat; 2],
) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let mut hits: Vec<Vec<Rat>> = Vec::new();
    let inside = |p: &Vec<Rat>| -> bool { (0..2).all(|j| lo[j] <= p[j] && p[j] <= hi[j]) };
    for j in 0..2 {
        let other = 1 - j;
        if coeffs[other].is_zero() {
            continue;
        }
        for edge in [&lo[j], &hi[j]] {
            // coordinate j fixed at the edge
            let rest = value - &(&coeffs[j] * edge);
            let u = &rest / &coeffs[other];
            let mut p = vec![Rat::zero(); 2];
            p[j] = edge.clone();
            p[other] = u;
            if inside(&p) && !hits.contains(&p) {
                hits.push(p);
            }
        }
    }
    if hits.len() < 2 {
        return None;
    }
    // extremes along the line direction (-a2, a1)
    let dir = [-coeffs[1].clone(), coeffs[0].clone()];
    let key = |p: &Vec<Rat>| -> Rat { &(&p[0] * &dir[0]) + &(&p[1] * &dir[1]) };
    let min = hits
        .iter()
        .min_by(|a, b| key(a).cmp(&key(b)))
        .unwrap()
        .clone();
    let max = hits
        .iter()
        .max_by(|a, b| key(a).cmp(&key(b)))
        .unwrap()
        .clone();
    if min == max {
        return None;
    }
    Some((min, max))
}

pub fn render(scene: &Scene) -> String {
    let margin = 50.0;
    let pw = 360.0;
    let ph = 360.0;
    let width = 2.0 * pw + 3.0 * margin;
    let height = ph + 2.0 * margin + 20.0;

    let left = Panel {
        x0: margin,
        y0: margin,
        w: pw,
        h: ph,
        lo: (to_f64(&scene.box_lo[0]), to_f64(&scene.box_lo[1])),
        hi: (to_f64(&scene.box_hi[0]), to_f64(&scene.box_hi[1])),
    };

    // s-space panel bounds: components drawn in u = -s coordinates, so all
    // intercepts b / l_j are positive
    let umax = scene
        .components
        .iter()
        .chain(&scene.reference)
        .map(|c| to_f64(&c.form.constant))
        .fold(1.0_f64, f64::max)
        + 0.5;
    let right = Panel {
        x0: 2.0 * margin + pw,
        y0: margin,
        w: pw,
        h: ph,
        lo: (0.0, 0.0),
        hi: (umax, umax),
    };

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        sig6(width),
        sig6(height),
        sig6(width),
        sig6(height)
    );
    svg.push('\n');
    svg.push_str("<!-- pixel coordinates are decimal presentation only; data-* attributes carry the exact rationals -->\n");
    let _ = write!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="1"/>"#,
        sig6(left.x0),
        sig6(left.y0),
        sig6(left.w),
        sig6(left.h)
    );
    svg.push('\n');

    // KLT region (light), then LCT polytope (dark) on top
    if !scene.klt.is_empty() {
        let (pix, exact) = polygon_attr(&scene.klt, &left);
        let _ = write!(
            svg,
            r##"<polygon class="klt" data-vertices="{exact}" points="{pix}" fill="#c8d8f0" stroke="none"/>"##
        );
        svg.push('\n');
    }
    if !scene.lct.is_empty() {
        let (pix, exact) = polygon_attr(&scene.lct, &left);
        let _ = write!(
            svg,
            r##"<polygon class="lct" data-vertices="{exact}" points="{pix}" fill="#5878a8" stroke="none"/>"##
        );
        svg.push('\n');
    }
    for (p, q, form) in &scene.jump_segments {
        let (x1, y1) = left.map(p);
        let (x2, y2) = left.map(q);
        let _ = write!(
            svg,
            r#"<line class="jump-facet" data-form="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
            form_attr(form),
            sig6(x1),
            sig6(y1),
            sig6(x2),
            sig6(y2)
        );
        svg.push('\n');
    }
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
        sig6(left.x0 + pw / 2.0 - 20.0),
        sig6(left.y0 + ph + 30.0),
        scene.axis_labels.0
    );
    svg.push('\n');
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" transform="rotate(-90 {} {})">{}</text>"#,
        sig6(left.x0 - 30.0),
        sig6(left.y0 + ph / 2.0),
        sig6(left.x0 - 30.0),
        sig6(left.y0 + ph / 2.0),
        scene.axis_labels.1
    );
    svg.push('\n');

    // s-space panel: lines sum_j l_j u_j = b in u = -s coordinates
    let _ = write!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="1"/>"#,
        sig6(right.x0),
        sig6(right.y0),
        sig6(right.w),
        sig6(right.h)
    );
    svg.push('\n');
    let ulo = [Rat::zero(), Rat::zero()];
    let umax_rat = {
        // smallest rational >= umax with denominator 2
        let twice = (umax * 2.0).ceil() as i64;
        rat(twice, 2)
    };
    let uhi = [umax_rat.clone(), umax_rat];
    for (class, dash, set) in [
        ("component", "none", &scene.components),
        ("reference", "6,3", &scene.reference),
    ] {
        for c in set {
            let coeffs = [c.form.coeffs[0].clone(), c.form.coeffs[1].clone()];
            let Some((p, q)) = clip_line(&coeffs, &c.form.constant, &ulo, &uhi) else {
                continue;
            };
            let (x1, y1) = right.map(&p);
            let (x2, y2) = right.map(&q);
            let _ = write!(
                svg,
                r#"<line class="{}" data-form="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.2" stroke-dasharray="{}"/>"#,
                class,
                form_attr(&c.form),
                sig6(x1),
                sig6(y1),
                sig6(x2),
                sig6(y2),
                if class == "component" {
                    "#203050"
                } else {
                    "#a03030"
                },
                dash
            );
            svg.push('\n');
        }
    }
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-size="12">-{}</text>"#,
        sig6(right.x0 + pw / 2.0 - 20.0),
        sig6(right.y0 + ph + 30.0),
        scene.axis_labels.0.replace("lambda", "s")
    );
    svg.push('\n');
    let _ = write!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" transform="rotate(-90 {} {})">-{}</text>"#,
        sig6(right.x0 - 30.0),
        sig6(right.y0 + ph / 2.0),
        sig6(right.x0 - 30.0),
        sig6(right.y0 + ph / 2.0),
        scene.axis_labels.1.replace("lambda", "s")
    );
    svg.push('\n');
    svg.push_str("</svg>\n");
    svg
}
