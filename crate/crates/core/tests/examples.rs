//! Every example must run to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                let lines = run().unwrap();
                assert!(!lines.is_empty());
            }
        }
    };
}

example!(critical_group);
example!(smith_normal_form);
example!(chip_firing);
example!(generating_pairs);
example!(polygon_stacks);
example!(spanning_tree_sequences);
example!(lorenzini_search);
