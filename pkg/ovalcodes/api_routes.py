"""
This file defines the JSON API over the verification service.

It allows clients to:
- List the oval polynomial catalog for GF(2^m)
- Check one oval polynomial against every criterion
- Build a generator matrix in the code file format
- Analyse a posted generator matrix
- Verify one of the NMDS theorems

Failures raise package errors; the handler registered in create_app turns
them into {'error': ..., 'kind': ...} responses.
"""

from flask import Blueprint, current_app, jsonify, request

from .errors import CodeError, ConfigError
from .lincode import matrix_from_json, matrix_to_json
from .verification_service import VerificationService

api_bp = Blueprint('api', __name__, url_prefix='/api')

# query parameters forwarded to the family constructors
FAMILY_PARAMS = ('h', 'k', 'a', 'e')


def _int_arg(name, base=10):
    raw = request.args.get(name)
    if raw is None:
        return None
    try:
        return int(raw, base)
    except ValueError:
        raise ConfigError(f"query parameter {name!r} must be an integer, got {raw!r}")


def _required_int(name):
    value = _int_arg(name)
    if value is None:
        raise ConfigError(f"query parameter {name!r} is required and must be an integer")
    return value


def _family_params():
    params = {key: _int_arg(key) for key in FAMILY_PARAMS if key in request.args}
    if 'beta' in request.args:
        parts = request.args['beta'].split(',')
        try:
            params['beta'] = tuple(int(p, 0) for p in parts)
        except ValueError:
            raise ConfigError(f"query parameter 'beta' must be c0,c1, got {request.args['beta']!r}")
    return params


def _field():
    m = _required_int('m')
    return m, VerificationService.field(m, _int_arg('modulus', 0), _int_arg('alpha', 0))


@api_bp.route('/opoly/catalog', methods=['GET'])
def get_catalog():
    """Every oval polynomial family instance applicable at m"""
    m, ctx = _field()
    return jsonify({'m': m, 'catalog': VerificationService.list_catalog(m, ctx)})


@api_bp.route('/opoly/verify', methods=['GET'])
def verify_opoly():
    m, ctx = _field()
    family = request.args.get('family', 'translation')
    spec, results = VerificationService.verify_opoly(family, m, _family_params(), ctx)
    return jsonify({
        'label': spec.label,
        'm': m,
        'criteria': [r.to_json() for r in results],
    })


@api_bp.route('/code/build', methods=['GET'])
def build_code():
    """Generator matrix of a construction, in the code file format"""
    m, ctx = _field()
    construction = request.args.get('construction', 'extended')
    family = request.args.get('family', 'translation')
    G = VerificationService.build(construction, family, m, _family_params(), ctx)
    return jsonify(matrix_to_json(G))


@api_bp.route('/code/analyze', methods=['POST'])
def analyze_code():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise CodeError("request body must be a code file JSON object")
    G = matrix_from_json(data)
    report = VerificationService.analyze(
        G, current_app.config['ENUMERATION_BUDGET'], current_app.config['WORKERS'])
    body = report.to_json()
    body['summary'] = report.summary()
    body['enumerator'] = report.distribution.enumerator()
    return jsonify(body)


@api_bp.route('/theorem/<theorem_id>', methods=['GET'])
def verify_theorem(theorem_id):
    m, ctx = _field()
    family = request.args.get('family', 'translation')
    result = VerificationService.verify_theorem(
        theorem_id, family, m, _family_params(), ctx,
        current_app.config['ENUMERATION_BUDGET'], current_app.config['WORKERS'])
    return jsonify(result.to_json())
