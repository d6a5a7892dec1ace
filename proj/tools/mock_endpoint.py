#!/usr/bin/env python3
"""Scripted external primitive for the line-delimited JSON protocol.

The script is a JSON object keyed by "op" or "op:sym". A list value is
consumed one reply per request; the last element repeats. Requests are
appended to $MOCK_LOG when it is set.
"""
import json
import os
import sys


def main():
    with open(sys.argv[1]) as f:
        script = json.load(f)
    served = {}
    log = os.environ.get("MOCK_LOG")
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        req = json.loads(line)
        if log:
            with open(log, "a") as out:
                out.write(line + "\n")
        op = req.get("op", "")
        key = op + ":" + req["sym"] if "sym" in req and op + ":" + req["sym"] in script else op
        if key not in script:
            reply = {"ok": False, "reason": "no script entry"}
        else:
            value = script[key]
            if isinstance(value, list):
                i = served.get(key, 0)
                served[key] = i + 1
                value = value[min(i, len(value) - 1)]
            reply = {"ok": True, "value": value}
        sys.stdout.write(json.dumps(reply) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
