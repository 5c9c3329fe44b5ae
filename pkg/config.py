"""
Configuration file for the controlled-unitary pulse solver
Edit these values according to your setup

Frequencies and energies are in GHz, durations in ns.
"""

# Physics Defaults
CONTROL_BIAS_GHZ = 10.0  # epsilon_A, keeps the control qubit frozen during a pulse
HOLD_BIAS_GHZ = 20.0  # Target bias outside the pulse window (must differ from CONTROL_BIAS_GHZ)
DEFAULT_TUNNELING_GHZ = 0.025  # Typical SQUID tunneling parameter (25 MHz)
DEFAULT_SAMPLE_DT_NS = 0.05  # Trace resolution (200 samples over 10 ns)

# Conventional controlled-H sequence (ns): R_y(pi/4), CNOT pulse, R_y(7pi/4), bias return
CONVENTIONAL_TIMINGS_NS = {
    'ry_pre': 2.5,
    'cnot': 10.0,
    'ry_post': 17.5,
    'settle': 2.5,
}

# Numerical Tolerances
HERMITIAN_TOL = 1e-10  # Max |H - H^dagger| entry accepted as Hermitian
UNITARY_TOL = 1e-8  # Max |U^dagger U - I| entry accepted as unitary
RESIDUAL_TOL = 1e-9  # Solver candidates with a larger equation defect are discarded
PHASE_INTEGRALITY_TOL = 1e-6  # epsilon_A * T must be an integer within this for equal block phases
APPROXIMATION_LIMIT = 1e-3  # Max Delta^2 T^2 for the approximate diagonal solution
REDUCED_VALIDITY_RATIO = 100.0  # Warn when epsilon_A / |Delta_A| drops below this
DEGENERACY_TOL = 1e-9  # sin(gamma/2) at or below this routes to the diagonal solver

# Command Line Settings
FIDELITY_THRESHOLD = 0.999  # verify passes when the block fidelity reaches this
FLOAT_FORMAT = '.12g'  # Used for every number written to CSV and solution files
SOLUTION_SCHEMA_VERSION = 1
NORMALIZATION_TOL = 1e-6  # Initial states further than this from norm 1 need --subnormalized

# Logging Settings
LOG_LEVEL = 'INFO'  # Options: DEBUG, INFO, WARNING, ERROR, CRITICAL
LOG_TO_CONSOLE = True  # Console output goes to stderr, stdout carries reports
LOG_TO_FILE = True  # Set to False to skip the rotating log file
LOG_DIR = 'logs'
LOG_FILE = 'pulse_solver.log'
LOG_MAX_BYTES = 5 * 1024 * 1024  # 5MB per log file
LOG_BACKUP_COUNT = 10  # Keep 10 backup files
