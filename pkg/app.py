"""
Flask Web Application
JSON API over the root classifier; responses use the same shapes as the
command line --json output.
"""

from flask import Flask, jsonify, request

from classify import RootClassifier
from structures.errors import CremonaError, DimensionError, InternalInconsistencyError, ParseError
from utils.config import (
    API_MAX_BUDGET,
    API_MAX_CAP,
    API_MAX_DEGREE,
    API_MAX_DIMENSION,
    API_MAX_EBOX,
    DEFAULT_BUDGET,
    DEFAULT_EBOX,
    DEFAULT_SEED,
)
from utils.parser import parse_derivation, parse_int_vector

# Initialize Flask app
app = Flask(__name__)


# Enable CORS if needed (for development)
@app.after_request
def after_request(response):
    response.headers.add('Access-Control-Allow-Origin', '*')
    response.headers.add('Access-Control-Allow-Headers', 'Content-Type,Authorization')
    response.headers.add('Access-Control-Allow-Methods', 'GET,POST,OPTIONS')
    return response


classifier = RootClassifier()


@app.errorhandler(InternalInconsistencyError)
def internal_inconsistency(error):
    app.logger.error("Internal inconsistency: %s", error)
    return jsonify({'error': str(error)}), 500


@app.errorhandler(CremonaError)
def bad_request(error):
    app.logger.info("Rejected request: %s", error)
    return jsonify({'error': str(error)}), 400


def _int_arg(source, name, default=None):
    value = source.get(name, default)
    if value is None:
        raise ParseError(f"missing parameter {name!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(f"parameter {name!r} must be an integer, got {value!r}") from None


def _within(value, label, low, high):
    """Reject request values outside the range the API serves."""
    if not low <= value <= high:
        raise DimensionError(f"{label} must be in {low}..{high} for web requests, got {value}")
    return value


def _json_body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise ParseError("request body must be a JSON object")
    return data


@app.route('/roots', methods=['GET'])
def roots():
    """
    Enumerate root vectors.
    Accepts: query parameters n and max_deg
    Returns: JSON {"n", "max_deg", "roots": [...]}
    """
    n = _int_arg(request.args, 'n')
    max_deg = _within(_int_arg(request.args, 'max_deg'), 'max degree', 0, API_MAX_DEGREE)
    return jsonify(classifier.roots_document(n, max_deg))


@app.route('/root-check', methods=['POST'])
def root_check():
    """
    Decide whether a derivation is a root vector.
    Accepts JSON: {'n': 2, 'derivation': 'x2^3 d/dx1', 'cap': 10}
    """
    data = _json_body()
    n = _int_arg(data, 'n')
    d = parse_derivation(str(data.get('derivation', '')), n)
    cap = None
    if data.get('cap') is not None:
        cap = _int_arg(data, 'cap')
        if cap > API_MAX_CAP:
            raise DimensionError(f"cap must be at most {API_MAX_CAP} for web requests, got {cap}")
    result = RootClassifier(cap=cap).root_check(d)

    if result.is_root:
        return jsonify({
            'root': True,
            'i': result.i,
            'alpha': list(result.alpha),
            'lambda': str(result.lam),
            'mvec': list(result.root),
            'character': list(result.character.beta),
            'derivation': result.normal_form().to_terms(),
        })
    return jsonify({'root': False, 'reason': result.reason.value, 'detail': result.detail})


@app.route('/char', methods=['GET'])
def char():
    """
    Decide whether a character is a root.
    Accepts: query parameters n and beta (comma separated)
    """
    n = _int_arg(request.args, 'n')
    beta = parse_int_vector(request.args.get('beta', ''), length=n, name='beta')
    return jsonify(classifier.character(beta))


@app.route('/verify', methods=['POST'])
def verify():
    """
    Cross-validate the classification and run the oracle search.
    Accepts JSON: {'n', 'max_deg', 'ebox'?, 'budget'?, 'seed'?}
    Returns JSON: {"tested", "violations", "pass", ...}
    """
    data = _json_body()
    report = classifier.verify(
        _within(_int_arg(data, 'n'), 'n', 2, API_MAX_DIMENSION),
        _within(_int_arg(data, 'max_deg'), 'max degree', 0, API_MAX_DEGREE),
        _within(_int_arg(data, 'ebox', DEFAULT_EBOX), 'ebox', 0, API_MAX_EBOX),
        _within(_int_arg(data, 'budget', DEFAULT_BUDGET), 'budget', 0, API_MAX_BUDGET),
        _int_arg(data, 'seed', DEFAULT_SEED),
    )
    return jsonify(report.to_dict())


if __name__ == '__main__':
    import sys
    port = 5000
    if len(sys.argv) > 1:
        port = int(sys.argv[1])

    app.logger.info("Starting Flask server on http://127.0.0.1:%d", port)
    app.run(debug=True, host='127.0.0.1', port=port, threaded=True)
