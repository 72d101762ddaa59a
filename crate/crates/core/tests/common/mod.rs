#![allow(dead_code)]

use std::f64::consts::PI;

use hypershape::ParametricSurface;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A named test surface with a box of parameters to sample from.
pub struct TestSurface {
    pub name: &'static str,
    pub coords: [&'static str; 4],
    pub box_: [[f64; 2]; 3],
    pub orthogonal: bool,
}

impl TestSurface {
    pub fn surface(&self) -> ParametricSurface {
        ParametricSurface::parse_unbounded(self.coords).unwrap()
    }

    pub fn sample(&self, rng: &mut impl Rng) -> [f64; 3] {
        self.box_.map(|[lo, hi]| rng.gen_range(lo..hi))
    }
}

pub const HYPERSPHERE: TestSurface = TestSurface {
    name: "hypersphere",
    coords: [
        "sin(u)*cos(v)*sin(w)",
        "sin(u)*sin(v)*sin(w)",
        "cos(u)*sin(w)",
        "cos(w)",
    ],
    box_: [[0.2, PI - 0.2], [-PI, PI], [0.2, PI - 0.2]],
    orthogonal: true,
};

pub const HYPERBOLA: TestSurface = TestSurface {
    name: "hyperbola × plane",
    coords: ["u", "1/u", "v", "w"],
    box_: [[0.5, 2.0], [-2.0, 2.0], [-2.0, 2.0]],
    orthogonal: true,
};

pub const SPHERE_CYLINDER: TestSurface = TestSurface {
    name: "sphere × line",
    coords: ["cos(u)", "sin(u)*cos(v)", "sin(u)*sin(v)", "w"],
    box_: [[0.2, PI - 0.2], [-PI, PI], [-2.0, 2.0]],
    orthogonal: true,
};

pub const ROTATION: TestSurface = TestSurface {
    name: "circle × circle tube",
    coords: [
        "(2 + cos(v))*cos(u)",
        "(2 + cos(v))*sin(u)",
        "sin(v)*cos(w)",
        "sin(v)*sin(w)",
    ],
    box_: [[-PI, PI], [0.2, PI - 0.2], [-PI, PI]],
    orthogonal: true,
};

pub const FLAT: TestSurface = TestSurface {
    name: "hyperplane",
    coords: ["u", "v", "w", "0"],
    box_: [[-2.0, 2.0]; 3],
    orthogonal: true,
};

pub const SHEARED: TestSurface = TestSurface {
    name: "sheared graph",
    coords: ["u", "u + v^2", "v", "w"],
    box_: [[-1.5, 1.5]; 3],
    orthogonal: false,
};

pub const SADDLE: TestSurface = TestSurface {
    name: "quadric saddle",
    coords: ["u", "v", "w", "u^2 + v^2 - w^2"],
    box_: [[-1.0, 1.0]; 3],
    orthogonal: false,
};

pub const PRODUCT_SADDLE: TestSurface = TestSurface {
    name: "saddle × line",
    coords: ["u", "v", "w", "u^2 - v^2"],
    box_: [[-1.0, 1.0]; 3],
    orthogonal: false,
};

pub const GENERIC: TestSurface = TestSurface {
    name: "generic",
    coords: [
        "u + 0.3*v*w",
        "v + sin(u)",
        "w - 0.2*u^2",
        "u*v*w + cos(v) + exp(0.5*w)",
    ],
    box_: [[-1.0, 1.0]; 3],
    orthogonal: false,
};

pub const ALL: [&TestSurface; 9] = [
    &HYPERSPHERE,
    &HYPERBOLA,
    &SPHERE_CYLINDER,
    &ROTATION,
    &FLAT,
    &SHEARED,
    &SADDLE,
    &PRODUCT_SADDLE,
    &GENERIC,
];

/// One line per criterion, then fail the test if the criterion failed.
pub fn verdict(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}
