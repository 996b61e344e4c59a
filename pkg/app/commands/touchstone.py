"""
Subcomando touchstone: conversión entre formatos RI / MA / DB
"""
from ..exceptions import EXIT_OK
from ..services.touchstone_service import touchstone_service


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("touchstone", help="Touchstone utilities")
    actions = parser.add_subparsers(dest="action", required=True)
    convert = actions.add_parser("convert", help="Re-encode a .s1p/.s2p file")
    convert.add_argument("source")
    convert.add_argument("target")
    convert.add_argument("--format", required=True, type=str.upper, choices=["RI", "MA", "DB"])
    convert.set_defaults(handler=handle_convert)


def handle_convert(args) -> int:
    touchstone_service.convert(args.source, args.target, args.format)
    return EXIT_OK
