#!/usr/bin/env python3
"""
Launcher for the JSON API: checks dependencies, warms the enumeration cache
and starts Flask on the port given as the first argument (default 5000).
"""

import logging
import sys

try:
    import flask  # noqa: F401
    import pyparsing  # noqa: F401
except ImportError as missing:
    print(f"Error: {missing.name} is not installed.")
    print("Please install the dependencies using: pip3 install -r requirements.txt")
    sys.exit(1)

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
logger = logging.getLogger("run_server")

ENDPOINTS = ("GET /roots", "POST /root-check", "GET /char", "POST /verify")


def parse_port(argv):
    if len(argv) < 2:
        return 5000
    try:
        port = int(argv[1])
    except ValueError:
        sys.exit(f"Error: port must be an integer, got {argv[1]!r}")
    if not 0 < port < 65536:
        sys.exit(f"Error: port {port} is out of range")
    return port


def main():
    from app import app, classifier

    port = parse_port(sys.argv)
    # small enumerations are requested by most clients
    for n in (2, 3):
        classifier.roots(n, 4)

    print("\n" + "=" * 60)
    print("Cremona Roots - JSON API")
    print("=" * 60)
    print(f"\nListening on http://127.0.0.1:{port}")
    for endpoint in ENDPOINTS:
        print(f"    {endpoint}")
    print("\nPress Ctrl+C to stop the server")
    print("=" * 60 + "\n")

    try:
        app.run(debug=False, host="127.0.0.1", port=port, threaded=True)
    except OSError as exc:
        if "Address already in use" in str(exc):
            logger.error("Port %d is already in use; try: python3 run_server.py %d", port, port + 1)
        else:
            logger.error("Could not start the server: %s", exc)
        sys.exit(1)


if __name__ == "__main__":
    main()
