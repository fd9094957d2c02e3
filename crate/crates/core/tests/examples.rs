#![allow(dead_code)]

macro_rules! example {
    ($module:ident, $test:ident) => {
        mod $module {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($module),
                ".rs"
            ));
        }

        #[test]
        fn $test() {
            $module::run_example().expect("example should run");
        }
    };
}

example!(channel_spectra, channel_spectra_runs);
example!(capacity_surface, capacity_surface_runs);
example!(limited_entanglement, limited_entanglement_runs);
example!(tradeoff_curve, tradeoff_curve_runs);
example!(damping_basis, damping_basis_runs);
example!(input_dominance, input_dominance_runs);
