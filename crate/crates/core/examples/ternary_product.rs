//! The 4D ternary cross product and its basic identities.

use hypershape::{det4, dot, gram_det, ternary, Vec4};

fn main() {
    let [e1, e2, e3, e4] = [Vec4::E1, Vec4::E2, Vec4::E3, Vec4::E4];
    println!("e1 ⊗ e2 ⊗ e3 = {}", ternary(e1, e2, e3));
    println!("e2 ⊗ e3 ⊗ e4 = {}", ternary(e2, e3, e4));
    println!("e3 ⊗ e4 ⊗ e1 = {}", ternary(e3, e4, e1));
    println!("e4 ⊗ e1 ⊗ e2 = {}", ternary(e4, e1, e2));
    println!("e1 ⊗ e2 ⊗ e4 = {}", ternary(e1, e2, e4));

    let x = Vec4::new(1.0, 2.0, -1.0, 3.0);
    let y = Vec4::new(0.0, 1.0, 4.0, -2.0);
    let z = Vec4::new(2.0, -1.0, 1.0, 1.0);
    let t = Vec4::new(5.0, 0.0, -3.0, 2.0);
    let p = ternary(x, y, z);

    println!();
    println!("x ⊗ y ⊗ z         = {p}");
    println!("<p, x> <p, y> <p, z> = {} {} {}", dot(p, x), dot(p, y), dot(p, z));
    println!("|p|² = {}   gram det = {}", p.norm_squared(), gram_det(x, y, z));
    println!("<p, t> = {}   det(t, x, y, z) = {}", dot(p, t), det4(t, x, y, z));
    println!("y ⊗ x ⊗ z = {}  (sign flips)", ternary(y, x, z));
}
