// Runs every example's main so they stay compiling and panic-free.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(formula_table);
example!(lower_bound);
example!(sumsets);
example!(discrete_search);
example!(certify_upper);
example!(auto_prove);
example!(reproduce);
