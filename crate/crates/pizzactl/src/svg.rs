//! Link diagrams: the two links as horizontal segments with zone disks
//! scaled inversely to the contact order and σ-contacts drawn between them.

use pizza_core::exacts::{ratio_to_f64, Exp};
use pizza_core::SigmaTau;

fn order_radius(q: &Exp<pizza_core::Rat>) -> f64 {
    match q {
        Exp::Infinite => 2.0,
        Exp::Finite(v) => {
            let f = ratio_to_f64(v).max(0.5);
            (16.0 / f).clamp(2.0, 16.0)
        }
    }
}

/// Deterministic SVG: zone markers spaced evenly along each link, joined by
/// σ-contact curves labeled with the contact order.
pub fn render_svg(st: &SigmaTau) -> String {
    let width = 640.0;
    let margin = 40.0;
    let y_t = 80.0;
    let y_tp = 220.0;
    let n_t = st.pizza_t.zones.len();
    let n_tp = st.pizza_tp.zones.len();
    let x_of = |i: usize, n: usize| -> f64 {
        if n <= 1 {
            width / 2.0
        } else {
            margin + (width - 2.0 * margin) * (i as f64) / ((n - 1) as f64)
        }
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"300\" viewBox=\"0 0 {} 300\">\n",
        width, width
    ));
    out.push_str("<style>text{font-family:monospace;font-size:11px;}</style>\n");
    for (label, y, pizza, n) in [
        ("T", y_t, &st.pizza_t, n_t),
        ("T'", y_tp, &st.pizza_tp, n_tp),
    ] {
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            margin,
            y,
            width - margin,
            y
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>\n",
            6.0,
            y + 4.0,
            label
        ));
        for (i, z) in pizza.zones.iter().enumerate() {
            let x = x_of(i, n);
            let r = order_radius(&z.q);
            out.push_str(&format!(
                "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{r:.1}\" fill=\"#888\" stroke=\"black\"/>\n"
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\">q={} k={}</text>\n",
                x - 14.0,
                if y == y_t { y - 20.0 } else { y + 28.0 },
                z.q,
                z.kind
            ));
        }
    }
    // σ-contact curves between corresponding maximum zones.
    let max_t = st.pizza_t.maximum_zones();
    let max_tp = st.pizza_tp.maximum_zones();
    for &(i, ip) in &st.sigma {
        let zi = max_t[i - 1];
        let zp = max_tp[ip - 1];
        let x1 = x_of(zi, n_t);
        let x2 = x_of(zp, n_tp);
        let q = &st.pizza_t.zones[zi].q;
        out.push_str(&format!(
            "<path d=\"M {:.1} {:.1} C {:.1} {:.1}, {:.1} {:.1}, {:.1} {:.1}\" fill=\"none\" stroke=\"#336\" stroke-dasharray=\"4 3\"/>\n",
            x1,
            y_t + 8.0,
            x1,
            (y_t + y_tp) / 2.0,
            x2,
            (y_t + y_tp) / 2.0,
            x2,
            y_tp - 8.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>\n",
            (x1 + x2) / 2.0 - 8.0,
            (y_t + y_tp) / 2.0,
            q
        ));
    }
    out.push_str("</svg>\n");
    out
}
