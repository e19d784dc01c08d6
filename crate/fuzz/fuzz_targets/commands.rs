//! Feeds any accepted file to the command that consumes its payload kind.
//! Commands may reject the input but must not panic.

#![no_main]

use libfuzzer_sys::fuzz_target;
use probdyn::confirm::ConfirmationMode;
use probdyn_cli::commands::{
    cmd_conditionalize, cmd_confirm, cmd_dutchbook, cmd_merge, cmd_normalize, cmd_repair, cmd_update, MergeMode,
    UpdateMethod,
};
use probdyn_cli::{EvidenceFile, Payload};

const EVIDENCE: &str = "partition = [\"B\", \"not-B\"]\n\n[[evidences]]\ncredence = 2.0\ndist = [0.7, 0.3]\n";

fuzz_target!(|data: &[u8]| {
    let Ok(file) = EvidenceFile::parse_bytes(data) else {
        return;
    };
    let outputs = match &file.payload {
        Payload::Evidences(_) => vec![
            cmd_merge(std::slice::from_ref(&file), MergeMode::Spd),
            cmd_merge(std::slice::from_ref(&file), MergeMode::Opd),
        ],
        Payload::WeightedSet(_) => vec![cmd_normalize(&file)],
        Payload::Joint(_) => {
            let evidence = EvidenceFile::parse(EVIDENCE).unwrap();
            vec![
                cmd_update(&file, &evidence, UpdateMethod::Jeffrey),
                cmd_update(&file, &evidence, UpdateMethod::Pd),
                cmd_confirm(&file, &evidence, ConfirmationMode::Straight),
                cmd_confirm(&file, &evidence, ConfirmationMode::Offsetting),
            ]
        }
        Payload::FirstOrder(_) => vec![cmd_conditionalize(&file)],
        Payload::Contingency(_) => vec![
            cmd_repair(&file, &["1:1".to_string()]),
            cmd_repair(&file, &["1:1".to_string(), "2:3:0.5".to_string()]),
        ],
        Payload::Bet(_) => vec![cmd_dutchbook(&file)],
        _ => Vec::new(),
    };
    for out in outputs.into_iter().flatten() {
        let text = out.file.to_toml();
        assert_eq!(EvidenceFile::parse(&text).expect("output re-parses"), out.file);
    }
});
