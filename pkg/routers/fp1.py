from fastapi import APIRouter

from algebra.fp1 import fp1_equivalence_report
from models.schema import Fp1Request
from routers.common import guarded, loaded_from, pick
from runner import execute
from toolkit_config import settings

router = APIRouter(prefix="/fp1", tags=["FP1"])


@router.post("")
def fp1(request: Fp1Request):
    return guarded(lambda: execute(
        "fp1", loaded_from(request), settings.default_length, pick(request.cap, settings.search_cap),
    ))


@router.post("/equivalence")
def equivalence(request: Fp1Request):
    """Left and right generating-set witnesses side by side."""
    def action():
        item = loaded_from(request)
        return fp1_equivalence_report(
            item.semigroup, pick(request.cap, settings.search_cap), name=item.name, order_cap=settings.search_cap,
        )

    return guarded(action)
