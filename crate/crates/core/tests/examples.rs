//! Every runnable example doubles as a smoke test.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main()
            }
        }
    };
}

example!(charpoly);
example!(mechanisms);
example!(hensel_decide);
example!(obstruction);
example!(monodromy);
example!(campaign);
example!(degree8_scan);
example!(documents);
