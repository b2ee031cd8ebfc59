from xube.cli import main

main()
