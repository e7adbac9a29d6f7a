import os
import sys

# ctest points this at the in-tree extension; drop any editable-install finder
# so that build is the one imported.
_build = os.environ.get("MFSCALE_BUILD_PYTHON_DIR")
if _build:
    sys.meta_path[:] = [f for f in sys.meta_path if "editable" not in type(f).__module__]
    sys.path.insert(0, _build)
