//! Dependency-free SVG scatter of fiber coordinates in the upper
//! half-plane. Plain text assembly; output is deterministic.

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;

/// Scatter plot of τ values. The horizontal axis is the real line
/// (the fiber boundary); all points sit above it.
pub fn tau_scatter(taus: &[(f64, f64)]) -> String {
    let re_max = taus
        .iter()
        .map(|t| t.0.abs())
        .fold(1.0f64, f64::max)
        .min(10.0);
    let im_max = taus.iter().map(|t| t.1).fold(1.5f64, f64::max).min(20.0);
    let x = |re: f64| -> f64 {
        let clamped = re.clamp(-re_max, re_max);
        MARGIN + (clamped + re_max) / (2.0 * re_max) * (WIDTH - 2.0 * MARGIN)
    };
    let y = |im: f64| -> f64 {
        let clamped = im.clamp(0.0, im_max);
        HEIGHT - MARGIN - clamped / im_max * (HEIGHT - 2.0 * MARGIN)
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // the real axis: boundary of the fiber
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        MARGIN,
        HEIGHT - MARGIN,
        WIDTH - MARGIN,
        HEIGHT - MARGIN
    ));
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">Im tau</text>\n",
        6.0, MARGIN
    ));
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">Re tau</text>\n",
        WIDTH - MARGIN - 48.0,
        HEIGHT - 12.0
    ));
    for &(re, im) in taus {
        out.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n",
            x(re),
            y(im)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_is_valid_svg() {
        let svg = tau_scatter(&[(0.0, 1.0), (0.5, 0.2), (-2.0, 3.0)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
