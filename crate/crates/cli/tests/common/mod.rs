#![allow(dead_code)]

use froblab::{execute, to_json, Command, Options, Report};

pub struct Case {
    pub name: &'static str,
    pub command: Command,
    pub file: &'static str,
    pub opts: fn() -> Options,
}

fn default() -> Options {
    Options {
        attempts: froblab::search::DEFAULT_ATTEMPTS,
        ..Options::default()
    }
}

fn f_zero() -> Options {
    Options {
        f: Some("0".into()),
        ..default()
    }
}

fn seeded() -> Options {
    Options { seed: 7, ..default() }
}

fn member() -> Options {
    Options {
        poly: Some("x2^2*x3^2".into()),
        ..default()
    }
}

const DETERMINANTAL: &str = "fixtures/paper_example.ring";

pub const CASES: &[Case] = &[
    Case {
        name: "determinantal_minors",
        command: Command::Minors,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_dim",
        command: Command::Dim,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_gb",
        command: Command::Gb,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_fpure",
        command: Command::Fpure,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_fclosure",
        command: Command::Fclosure,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_cover_check",
        command: Command::CoverCheck,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_cover_check_f0",
        command: Command::CoverCheck,
        file: DETERMINANTAL,
        opts: f_zero,
    },
    Case {
        name: "determinantal_pipeline",
        command: Command::Pipeline,
        file: DETERMINANTAL,
        opts: default,
    },
    Case {
        name: "determinantal_pipeline_f0",
        command: Command::Pipeline,
        file: DETERMINANTAL,
        opts: f_zero,
    },
    Case {
        name: "determinantal_find_sop",
        command: Command::FindSop,
        file: DETERMINANTAL,
        opts: seeded,
    },
    Case {
        name: "cusp_fpure",
        command: Command::Fpure,
        file: "fixtures/cusp.ring",
        opts: default,
    },
    Case {
        name: "cusp_pipeline",
        command: Command::Pipeline,
        file: "fixtures/cusp.ring",
        opts: default,
    },
    Case {
        name: "regular_f2_cover_check",
        command: Command::CoverCheck,
        file: "fixtures/regular_f2.ring",
        opts: default,
    },
    Case {
        name: "regular_f3_cover_check",
        command: Command::CoverCheck,
        file: "fixtures/regular_f3.ring",
        opts: default,
    },
    Case {
        name: "regular_f3_pipeline",
        command: Command::Pipeline,
        file: "fixtures/regular_f3.ring",
        opts: default,
    },
    Case {
        name: "cone_fclosure",
        command: Command::Fclosure,
        file: "fixtures/cone.ring",
        opts: default,
    },
    Case {
        name: "cone_pipeline",
        command: Command::Pipeline,
        file: "fixtures/cone.ring",
        opts: default,
    },
    Case {
        name: "monomial_gb",
        command: Command::Gb,
        file: "fixtures/monomial.ring",
        opts: default,
    },
    Case {
        name: "monomial_membership",
        command: Command::Membership,
        file: "fixtures/monomial.ring",
        opts: member,
    },
];

pub fn run(case: &Case) -> Report {
    execute(case.command, case.file, &(case.opts)())
}

pub fn run_json(case: &Case) -> String {
    to_json(&run(case))
}

pub fn golden_path(case: &Case) -> String {
    format!("fixtures/golden/{}.json", case.name)
}
