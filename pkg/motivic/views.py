from django.contrib.admin.views.decorators import staff_member_required
from django.db.models import Count, Max
from django.http import JsonResponse
from django.shortcuts import get_object_or_404
from django.views.decorators.http import require_http_methods

from .models import SweepRun


@staff_member_required
@require_http_methods(["GET"])
def report_list(request):
    """Recorded sweep runs, newest first"""
    runs = SweepRun.objects.annotate(
        prime_count=Count('primes'),
        max_n=Max('primes__min_n'),
    ).order_by('-created_at')

    statement = request.GET.get('statement')
    if statement:
        runs = runs.filter(statement=statement)

    return JsonResponse({
        'runs': [
            {
                'id': run.id,
                'statement': run.statement,
                'status': run.status,
                'exit_code': run.exit_code,
                'primes': run.prime_count,
                'max_min_N': run.max_n,
                'created_at': run.created_at.isoformat(),
            }
            for run in runs
        ]
    })


@staff_member_required
@require_http_methods(["GET"])
def report_detail(request, run_id):
    """The stored report of one run"""
    run = get_object_or_404(SweepRun, pk=run_id)
    return JsonResponse(run.report, json_dumps_params={'ensure_ascii': False})
