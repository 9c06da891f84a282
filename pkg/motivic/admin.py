from django.contrib import admin
from django.urls import reverse
from django.utils.html import format_html

from .models import PrimeResult, SweepRun


class PrimeResultInline(admin.TabularInline):
    model = PrimeResult
    extra = 0
    fields = ['p', 'field', 'depth', 'grid_size', 'hypothesis_ok', 'min_n', 'violations', 'flags']
    readonly_fields = fields
    can_delete = False


@admin.register(SweepRun)
class SweepRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'statement', 'status', 'exit_code', 'created_at', 'report_link']
    list_filter = ['statement', 'status', 'created_at']
    readonly_fields = ['manifest', 'report', 'created_at']
    inlines = [PrimeResultInline]

    def report_link(self, obj):
        """Ссылка на JSON-отчёт прогона"""
        url = reverse('report_detail', args=[obj.id])
        return format_html('<a href="{}">JSON</a>', url)
    report_link.short_description = 'Отчёт'


@admin.register(PrimeResult)
class PrimeResultAdmin(admin.ModelAdmin):
    list_display = ['run', 'p', 'field', 'hypothesis_ok', 'min_n', 'violations', 'flags']
    list_filter = ['run__statement', 'field', 'hypothesis_ok']
    search_fields = ['flags']

    def get_queryset(self, request):
        return super().get_queryset(request).select_related('run')
