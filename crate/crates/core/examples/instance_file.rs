//! The text instance format and the command runner behind the `mfwork`
//! binary: parse an instance, run commands, print the JSON documents.

use mfwork::cli::{execute, parse_instance, Command, Limits};

const NODE: &str = include_str!("data/node.inst");

fn main() {
    let inst = parse_instance(NODE).expect("bundled instance parses");
    // Canonical text is a fixed point of parsing.
    let text = inst.to_text();
    assert_eq!(parse_instance(&text).expect("canonical text parses").to_text(), text);
    println!("{text}");

    let limits = Limits::default();
    for (cmd, names) in [(Command::Validate, vec!["Bad"]), (Command::Stabilize, vec!["k"]), (Command::VerifyPeriodicity, vec!["k"])] {
        let names: Vec<String> = names.into_iter().map(String::from).collect();
        let (status, doc) = execute(cmd, NODE, &names, &limits);
        println!("== {} {} -> exit {}", cmd.name(), names.join(" "), status.exit_code());
        println!("{}", serde_json::to_string_pretty(&doc["result"]).expect("json values serialize"));
    }
}
