#![no_main]

use hdds::cli::{ingest_reader, IngestSpec};
use hdds::table::{build_table, TableConfig};
use libfuzzer_sys::fuzz_target;

// The first line of the input names the target and conditioning columns;
// the rest is the CSV body.
fuzz_target!(|data: &[u8]| {
    let Some(split) = data.iter().position(|&b| b == b'\n') else {
        return;
    };
    let Ok(head) = std::str::from_utf8(&data[..split]) else {
        return;
    };
    let mut names = head.split(',');
    let Some(target) = names.next() else {
        return;
    };
    let mut spec = IngestSpec::new(target);
    spec.by_x = names.next().map(str::to_string);
    spec.by_y = names.next().map(str::to_string);
    if let Ok(got) = ingest_reader(&data[split + 1..], "fuzz", &spec) {
        assert!(got.dataset.len() + got.dropped == got.rows);
        if spec.by_x.is_some() && got.dataset.len() <= 5_000 {
            let _ = build_table(&got.dataset, &TableConfig::default());
        }
    }
});
