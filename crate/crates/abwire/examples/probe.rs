fn main() {
    for &(nu, x) in &[(0.0f64, 2.0f64), (0.0, 10.0), (0.5, 8.0), (1.0, 5.0), (41.2, 3.0), (99.5, 800.0)] {
        match abwire::specfun::bessel_jy(nu, x) {
            Ok(b) => println!("nu={nu} x={x}: J={:.15e} Y={:.15e}", b.j, b.y),
            Err(e) => println!("nu={nu} x={x}: ERR {e}"),
        }
    }
}
