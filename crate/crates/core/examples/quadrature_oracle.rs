//! Closed forms against direct quadrature of the Caputo integrals.

use fracdec::operator::RightSign;
use fracdec::oracles::{
    caputo_power, caputo_quadrature, two_sided_cubic, two_sided_poly, PolynomialCaputo,
    QuadratureSpec, Side,
};

fn main() -> fracdec::Result<()> {
    let spec = QuadratureSpec::default();
    let unit = (0.0, 1.0);
    for x in [0.25, 0.5, 0.75] {
        let q = caputo_quadrature(&|t| 2.0 * t, unit, x, 0.3, Side::Left, RightSign::Plus, &spec)?;
        println!("x^2, s = .3, x = {x}: power rule {:.12}, quadrature {q:.12}", caputo_power(2.0, 0.3, x)?);
    }
    for x in [0.2, 0.8] {
        let minus = caputo_quadrature(&|t| 3.0 * t * t, unit, x, 0.5, Side::TwoSided, RightSign::Minus, &spec)?;
        println!("x^3 two-sided at {x}: printed {:.10}, quadrature {minus:.10}", two_sided_cubic(x)?);
        let plus = caputo_quadrature(&|t| -30.0 * t * t + 20.0 * t, unit, x, 0.5, Side::TwoSided, RightSign::Plus, &spec)?;
        println!("-10x^3 + 10x^2 at {x}: printed {:.10}, quadrature {plus:.10}", two_sided_poly(x)?);
    }
    let poly = PolynomialCaputo::on_unit_interval(vec![0.0, 0.0, 10.0, -10.0])?;
    for s in [0.1, 0.5, 0.9] {
        println!("exact two-sided value at .5 for s = {s}: {:.10}", poly.evaluate(0.5, s, Side::TwoSided, RightSign::Plus)?);
    }
    Ok(())
}
