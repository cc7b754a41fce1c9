#![no_main]

use gml::catalog::{build, list_entries};
use gml::cli::parse_params;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let args: Vec<&str> = text.split_whitespace().collect();
    let Ok(params) = parse_params(&args) else { return };
    let entries = list_entries();
    let name = entries[pick as usize % entries.len()].name;
    if let Ok(entry) = build(name, &params) {
        let _ = entry.form.strip();
        let _ = entry.to_json();
    }
});
