//! Drive the library through a JSON problem file, exactly as the `levikohn`
//! binary does: one document holds the boundary, a variety, a holomorphic
//! map, and sampling parameters; commands select what they need.
//!
//! Run with: cargo run --example problem_file

use levikohn::cli::{run_command, Command, CommandFlags};
use levikohn::problem::parse_problem;
use levikohn::report::{emit_report, ReportFormat};

const PROBLEM: &str = r#"{
    "dimension": 3,
    "defining_function": "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
    "q": 2,
    "varieties": {
        "diagonal_curve": ["x1 - x2", "y1 - y2", "x3", "y3"]
    },
    "holo_maps": {
        "diagonal": {"params": 1, "components": ["w1", "w1", "0"]},
        "axis": {"params": 1, "components": ["w1", "0", "0"]}
    },
    "sampling": {
        "box": {"lo": [-0.8, -0.8, -0.8, -0.8, -0.8, -0.8],
                "hi": [0.8, 0.8, 0.8, 0.8, 0.8, 0.8]},
        "count": 20,
        "seed": 7
    },
    "budgets": {"max_h": 6, "max_order": 24}
}"#;

fn main() -> levikohn::Result<()> {
    let problem = parse_problem(PROBLEM)?;

    // tangency of the two named maps, as compact JSON reports
    for name in ["diagonal", "axis"] {
        let flags = CommandFlags {
            map: Some(name.to_string()),
            ..CommandFlags::default()
        };
        let report = run_command(Command::Tangency, &problem, &flags)?;
        println!("--- tangency --map {name} ---");
        print!("{}", emit_report(&report, ReportFormat::Text)?);
        println!();
    }

    // is the named curve complex tangential to the boundary?
    let flags = CommandFlags {
        variety: Some("diagonal_curve".to_string()),
        samples: Some(12),
        ..CommandFlags::default()
    };
    let report = run_command(Command::Ctangent, &problem, &flags)?;
    println!("--- ctangent --variety diagonal_curve ---");
    print!("{}", emit_report(&report, ReportFormat::Text)?);
    println!();

    // the multiplier chain on 2-forms, as machine-stable JSON
    let report = run_command(Command::Kohn, &problem, &CommandFlags::default())?;
    println!("--- kohn --q 2 (JSON, truncated) ---");
    let json = emit_report(&report, ReportFormat::Json)?;
    for line in json.lines().take(24) {
        println!("{line}");
    }
    println!("...");
    Ok(())
}
