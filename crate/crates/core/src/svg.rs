//! SVG 1.1 pictures of lifted slalom curves and cross-ratio loops.
//!
//! One unit in the plane is `scale` pixels; each panel is centred on the
//! origin and sized to fit the curve with a one unit margin.

use std::fmt::Write;

use num_complex::Complex64;

use crate::covering::{PolyPath, SlalomDecomposition};

struct Panel {
    half_width: f64,
    half_height: f64,
    scale: f64,
}

impl Panel {
    fn fit(points: &[Complex64], extra: &[Complex64], scale: f64) -> Panel {
        let (mut w, mut h) = (1.0f64, 1.0f64);
        for p in points.iter().chain(extra) {
            w = w.max(p.re.abs());
            h = h.max(p.im.abs());
        }
        Panel {
            half_width: w.ceil() + 1.0,
            half_height: h.ceil() + 1.0,
            scale,
        }
    }

    fn width(&self) -> f64 {
        2.0 * self.half_width * self.scale
    }

    fn height(&self) -> f64 {
        2.0 * self.half_height * self.scale
    }

    fn x(&self, re: f64) -> f64 {
        (re + self.half_width) * self.scale
    }

    fn y(&self, im: f64) -> f64 {
        (self.half_height - im) * self.scale
    }

    fn polyline(&self, out: &mut String, points: &[Complex64], stroke: &str) {
        out.push_str("<polyline fill=\"none\" stroke=\"");
        out.push_str(stroke);
        out.push_str("\" stroke-width=\"1.5\" points=\"");
        for (i, p) in points.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.2},{:.2}", self.x(p.re), self.y(p.im));
        }
        out.push_str("\"/>\n");
    }

    fn dot(&self, out: &mut String, p: Complex64, radius: f64, fill: &str) {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{radius}\" fill=\"{fill}\"/>",
            self.x(p.re),
            self.y(p.im)
        );
    }

    fn label(&self, out: &mut String, p: Complex64, text: &str) {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{text}</text>",
            self.x(p.re),
            self.y(p.im)
        );
    }

    fn axes(&self, out: &mut String, real_axis: bool) {
        let _ = writeln!(
            out,
            "<line x1=\"{0:.2}\" y1=\"0\" x2=\"{0:.2}\" y2=\"{1:.2}\" stroke=\"#888\" stroke-width=\"1\"/>",
            self.x(0.0),
            self.height()
        );
        if real_axis {
            let _ = writeln!(
                out,
                "<line x1=\"0\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#ccc\" stroke-width=\"1\"/>",
                self.y(0.0),
                self.width()
            );
        }
    }

    /// Lifted curve in `C \ iZ` with the lattice, axis and piece labels.
    fn draw_lift(&self, out: &mut String, lift: &PolyPath, pieces: &SlalomDecomposition) {
        self.axes(out, false);
        let top = self.half_height as i64;
        for n in -top..=top {
            self.dot(out, Complex64::new(0.0, n as f64), 3.0, "black");
        }
        self.polyline(out, lift.points(), "#1f5fbf");
        self.dot(out, lift.start(), 2.5, "#1f5fbf");
        for piece in &pieces.pieces {
            let mid_im = 0.5 * (piece.start.im + piece.end.im);
            let offset = match piece.generator() {
                crate::word::Generator::A1 => -0.6,
                crate::word::Generator::A2 => 0.6,
            };
            let text = crate::word::Term::new(piece.generator(), piece.exponent())
                .map(|t| t.to_string())
                .unwrap_or_default();
            self.label(out, Complex64::new(offset, mid_im), &text);
        }
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
}

pub fn lift_svg(lift: &PolyPath, pieces: &SlalomDecomposition, scale: f64) -> String {
    let panel = Panel::fit(lift.points(), &[], scale);
    let mut out = String::new();
    header(&mut out, panel.width(), panel.height());
    panel.draw_lift(&mut out, lift, pieces);
    out.push_str("</svg>\n");
    out
}

/// Cross-ratio loop (left panel, punctures at `±1`) next to its lift.
pub fn braid_svg(curve: &PolyPath, lift: &PolyPath, pieces: &SlalomDecomposition, scale: f64) -> String {
    let punctures = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
    let left = Panel::fit(curve.points(), &punctures, scale);
    let right = Panel::fit(lift.points(), &[], scale);
    let mut out = String::new();
    header(
        &mut out,
        left.width() + right.width(),
        left.height().max(right.height()),
    );
    out.push_str("<g>\n");
    left.axes(&mut out, true);
    for p in punctures {
        left.dot(&mut out, p, 3.0, "black");
    }
    left.polyline(&mut out, curve.points(), "#bf3f1f");
    left.dot(&mut out, curve.start(), 2.5, "#bf3f1f");
    out.push_str("</g>\n");
    let _ = writeln!(out, "<g transform=\"translate({:.2},0)\">", left.width());
    right.draw_lift(&mut out, lift, pieces);
    out.push_str("</g>\n</svg>\n");
    out
}
