from stiff_spectra.cli.main import main

raise SystemExit(main())
