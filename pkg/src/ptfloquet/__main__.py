from ptfloquet.cli import main

raise SystemExit(main())
