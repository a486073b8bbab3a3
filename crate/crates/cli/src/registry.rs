use weyl_transfer::measure_lab::{
    codec_suite, comparison_matrix_suite, conjugacy_suite, decoder_suite, distinguishability_suite,
    entropy_suite, fibers_suite, generalized_kernel_suite, isometry_suite, perm_maps_suite,
    plancherel_suite, pushforward_suite, samplers_suite, translation_suite, young_conjugacy_suite,
    young_transfer_suite, DecoderTolerance, TestReport,
};
use weyl_transfer::{Result, SeedSpec};

/// Tunable suite parameters; `None` falls back to the descriptor default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SuiteParams {
    pub nmax: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<u64>,
    pub samples: Option<u64>,
    pub level_cap: Option<usize>,
    pub k_max: Option<usize>,
    pub tol: Option<f64>,
}

impl SuiteParams {
    /// `self` with unset fields taken from `defaults`.
    pub fn or(self, defaults: SuiteParams) -> SuiteParams {
        SuiteParams {
            nmax: self.nmax.or(defaults.nmax),
            n: self.n.or(defaults.n),
            trials: self.trials.or(defaults.trials),
            samples: self.samples.or(defaults.samples),
            level_cap: self.level_cap.or(defaults.level_cap),
            k_max: self.k_max.or(defaults.k_max),
            tol: self.tol.or(defaults.tol),
        }
    }
}

pub type SuiteRunner = fn(&SuiteParams, SeedSpec) -> Result<TestReport>;

pub struct SuiteDescriptor {
    pub name: &'static str,
    pub summary: &'static str,
    pub defaults: SuiteParams,
    pub run: SuiteRunner,
}

impl SuiteDescriptor {
    pub fn run_with(&self, overrides: SuiteParams, seed: SeedSpec) -> Result<TestReport> {
        (self.run)(&overrides.or(self.defaults), seed)
    }

    /// `key=value` list of the parameters this suite reads.
    pub fn defaults_text(&self) -> String {
        let d = &self.defaults;
        let mut parts = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        };
        push("nmax", d.nmax.map(|v| v.to_string()));
        push("n", d.n.map(|v| v.to_string()));
        push("trials", d.trials.map(|v| v.to_string()));
        push("samples", d.samples.map(|v| v.to_string()));
        push("level-cap", d.level_cap.map(|v| v.to_string()));
        push("k-max", d.k_max.map(|v| v.to_string()));
        push("tol", d.tol.map(|v| v.to_string()));
        parts.join(" ")
    }
}

const NONE: SuiteParams =
    SuiteParams { nmax: None, n: None, trials: None, samples: None, level_cap: None, k_max: None, tol: None };

fn get<T>(v: Option<T>) -> T {
    v.expect("descriptor defaults cover every parameter the runner reads")
}

static REGISTRY: &[SuiteDescriptor] = &[
    SuiteDescriptor {
        name: "codec",
        summary: "encoding oracles and path/i-permutation round trips, exhaustive",
        defaults: SuiteParams { nmax: Some(8), ..NONE },
        run: |p, _| codec_suite(get(p.nmax)),
    },
    SuiteDescriptor {
        name: "conjugacy",
        summary: "transfer of the code equals the code of the shift",
        defaults: SuiteParams { nmax: Some(8), n: Some(200), trials: Some(10_000), ..NONE },
        run: |p, s| conjugacy_suite(get(p.nmax), get(p.trials), get(p.n), s),
    },
    SuiteDescriptor {
        name: "translation",
        summary: "translation of i-permutations against shifted representatives",
        defaults: SuiteParams { nmax: Some(8), ..NONE },
        run: |p, _| translation_suite(get(p.nmax)),
    },
    SuiteDescriptor {
        name: "fibers",
        summary: "every path has exactly n transfer preimages",
        defaults: SuiteParams { nmax: Some(8), ..NONE },
        run: |p, _| fibers_suite(get(p.nmax)),
    },
    SuiteDescriptor {
        name: "decoder",
        summary: "recovery of coordinates from the code",
        defaults: SuiteParams { n: Some(10_000), trials: Some(1_000), k_max: Some(100), ..NONE },
        run: |p, s| {
            let mut tol = match p.tol {
                Some(t) => DecoderTolerance::uniform(t),
                None => DecoderTolerance::default(),
            };
            tol.k_max = get(p.k_max);
            decoder_suite(get(p.n), get(p.trials), s, tol)
        },
    },
    SuiteDescriptor {
        name: "distinguishability",
        summary: "independent pairs separated by a finite level",
        defaults: SuiteParams { trials: Some(10_000), level_cap: Some(12), ..NONE },
        run: |p, s| distinguishability_suite(get(p.trials), get(p.level_cap), s),
    },
    SuiteDescriptor {
        name: "pushforward",
        summary: "encoded uniform prefixes are Haar distributed",
        defaults: SuiteParams { n: Some(10), trials: Some(100_000), ..NONE },
        run: |p, s| pushforward_suite(get(p.n), get(p.trials), s),
    },
    SuiteDescriptor {
        name: "comparison-matrix",
        summary: "comparison matrix round trips and entry frequencies",
        defaults: SuiteParams { nmax: Some(300), n: Some(10), trials: Some(10_000), samples: Some(100_000), ..NONE },
        run: |p, s| comparison_matrix_suite(get(p.trials), get(p.nmax), get(p.samples), get(p.n), s),
    },
    SuiteDescriptor {
        name: "perm-maps",
        summary: "worked permutation examples and projection fibers",
        defaults: SuiteParams { nmax: Some(7), ..NONE },
        run: |p, _| perm_maps_suite(get(p.nmax)),
    },
    SuiteDescriptor {
        name: "young-transfer",
        summary: "Hasse rule against promotion on standard tableaux",
        defaults: SuiteParams { nmax: Some(7), n: Some(8), ..NONE },
        run: |p, _| young_transfer_suite(get(p.nmax), get(p.n)),
    },
    SuiteDescriptor {
        name: "young-conjugacy",
        summary: "recording tableaux intertwine the shift and the Young transfer",
        defaults: SuiteParams { nmax: Some(7), ..NONE },
        run: |p, _| young_conjugacy_suite(get(p.nmax)),
    },
    SuiteDescriptor {
        name: "entropy",
        summary: "partition sizes and growth of ln(q_n)/n",
        defaults: SuiteParams { nmax: Some(8), n: Some(20), ..NONE },
        run: |p, _| entropy_suite(get(p.nmax), 5, get(p.n)),
    },
    SuiteDescriptor {
        name: "isometry",
        summary: "Gram matrices of simplex indicators, exact and sampled",
        defaults: SuiteParams { nmax: Some(6), n: Some(4), samples: Some(1_000_000), ..NONE },
        run: |p, s| isometry_suite(get(p.nmax), get(p.n), get(p.samples), s),
    },
    SuiteDescriptor {
        name: "generalized-kernel",
        summary: "cells and branching of the shifted comparison kernel",
        defaults: SuiteParams { nmax: Some(6), n: Some(5), samples: Some(100_000), ..NONE },
        run: |p, s| generalized_kernel_suite(get(p.samples), get(p.n), get(p.nmax), s),
    },
    SuiteDescriptor {
        name: "plancherel",
        summary: "shape frequencies of recording tableaux",
        defaults: SuiteParams { samples: Some(100_000), ..NONE },
        run: |p, s| match p.n {
            Some(n) => plancherel_suite(&[n], get(p.samples), s),
            None => plancherel_suite(&[2, 4], get(p.samples), s),
        },
    },
    SuiteDescriptor {
        name: "samplers",
        summary: "uniform, Haar and Ewens samplers",
        defaults: SuiteParams { samples: Some(100_000), ..NONE },
        run: |p, s| samplers_suite(get(p.samples), s),
    },
];

/// Every suite, in a fixed order.
pub fn suite_registry() -> &'static [SuiteDescriptor] {
    REGISTRY
}

pub fn find_suite(name: &str) -> Option<&'static SuiteDescriptor> {
    REGISTRY.iter().find(|d| d.name == name)
}
