from fastapi import APIRouter

from models.schema import SemilatticeRequest
from routers.common import guarded, pick
from runner import load, load_spec, semilattice
from toolkit_config import settings

router = APIRouter(prefix="/semilattices", tags=["Semilattices"])


@router.post("")
def resolve_semilattice(request: SemilatticeRequest):
    def action():
        if request.catalog is not None:
            item = load(f"catalog:{request.catalog}")
        else:
            item = load_spec(request.spec, "request")
        return semilattice(item, pick(request.length, settings.default_length))

    return guarded(action)
