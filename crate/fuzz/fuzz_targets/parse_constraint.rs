#![no_main]

use libfuzzer_sys::fuzz_target;
use probdyn::Partition;
use probdyn_cli::commands::parse_constraint;

fuzz_target!(|data: &[u8]| {
    let Ok(arg) = std::str::from_utf8(data) else {
        return;
    };
    let columns = Partition::new(["B", "not-B", "B:2"]).unwrap();
    if let Ok(c) = parse_constraint(arg, &columns) {
        assert!(c.target_column < columns.len());
        assert!(c.effective_credence() >= 0.0);
    }
});
