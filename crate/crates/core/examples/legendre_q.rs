//! Legendre functions of both kinds on (-1, 1).

use prolate_quad::legendre::{eval_p_batch, eval_q_batch};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = 0.3;
    let p = eval_p_batch(6, x);
    let q = eval_q_batch(6, x)?;
    println!("{:>2} {:>22} {:>22} {:>14}", "k", "P_k", "Q_k", "Wronskian err");
    for k in 1..=6 {
        // P_k Q_{k-1} - P_{k-1} Q_k = 1/k
        let w = p[k].0 * q[k - 1].0 - p[k - 1].0 * q[k].0;
        println!("{k:>2} {:>22.15e} {:>22.15e} {:>14.1e}", p[k].0, q[k].0, (w - 1.0 / k as f64).abs());
    }
    println!("Q_0(0.3) = atanh(0.3) = {:.16}", 0.3f64.atanh());
    Ok(())
}
