use tropgrass::arith::{to_decimal, Rational};
use tropgrass::curve::TropPlaneCurve;

fn coord(q: &Rational, scale: i64) -> String {
    to_decimal(&(q * Rational::from_integer(scale.into())), 3)
}

fn point(p: &[Rational; 2], scale: i64) -> String {
    format!("{} {}", coord(&p[0], scale), coord(&-&p[1], scale))
}

/// An SVG drawing of `c`: one path per edge and per ray, stroke width equal to
/// the weight, `y` pointing up. Rays are cut off a fixed distance past the
/// bounding box of the vertices. Output depends only on `c` and `scale`.
pub fn curve_svg(c: &TropPlaneCurve, scale: i64) -> String {
    let xs = c.vertices.iter().map(|v| &v[0]);
    let ys = c.vertices.iter().map(|v| &v[1]);
    let zero = Rational::from_integer(0.into());
    let (x0, x1) = (xs.clone().min().unwrap_or(&zero).clone(), xs.max().unwrap_or(&zero).clone());
    let (y0, y1) = (ys.clone().min().unwrap_or(&zero).clone(), ys.max().unwrap_or(&zero).clone());
    let reach = (&x1 - &x0).max(&y1 - &y0) / Rational::from_integer(2.into()) + Rational::from_integer(1.into());

    let mut paths = Vec::new();
    for e in &c.edges {
        let (p, q) = (&c.vertices[e.a], &c.vertices[e.b]);
        paths.push((format!("M {} L {}", point(p, scale), point(q, scale)), e.weight));
    }
    for r in &c.rays {
        let p = &c.vertices[r.base];
        let len = Rational::from_integer(r.dir[0].abs().max(r.dir[1].abs()).into());
        let t = &reach / len;
        let end = [
            &p[0] + &t * Rational::from_integer(r.dir[0].into()),
            &p[1] + &t * Rational::from_integer(r.dir[1].into()),
        ];
        paths.push((format!("M {} L {}", point(p, scale), point(&end, scale)), r.weight));
    }

    let pad = &reach * Rational::from_integer(2.into());
    let view = [
        coord(&(&x0 - &pad), scale),
        coord(&(-&y1 - &pad), scale),
        coord(&(&x1 - &x0 + &pad * Rational::from_integer(2.into())), scale),
        coord(&(&y1 - &y0 + &pad * Rational::from_integer(2.into())), scale),
    ];
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        view[0], view[1], view[2], view[3]
    );
    for (d, w) in paths {
        out.push_str(&format!("  <path d=\"{d}\" stroke=\"black\" stroke-width=\"{w}\" fill=\"none\"/>\n"));
    }
    for v in &c.vertices {
        out.push_str(&format!("  <circle cx=\"{}\" cy=\"{}\" r=\"3\"/>\n", coord(&v[0], scale), coord(&-&v[1], scale)));
    }
    out.push_str("</svg>\n");
    out
}
