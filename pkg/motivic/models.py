from django.db import models, transaction


class SweepRun(models.Model):
    """Записанный прогон sweep"""

    STATEMENT_CHOICES = [
        ('bound', 'Перенос оценки'),
        ('lincomb', 'Перенос оценки для линейных комбинаций'),
        ('coeff', 'Перенос коэффициентов'),
        ('dep', 'Перенос линейной зависимости'),
        ('rigidity', 'Жёсткость RF/ZZ'),
        ('factor', 'Факторизация через профиль'),
    ]

    STATUS_CHOICES = [
        ('ok', 'Без нарушений'),
        ('violated', 'Есть нарушения'),
    ]

    statement = models.CharField(max_length=20, choices=STATEMENT_CHOICES, verbose_name='Утверждение')
    manifest = models.JSONField(default=dict, verbose_name='Манифест')
    report = models.JSONField(default=dict, verbose_name='Отчёт')
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, verbose_name='Статус')
    exit_code = models.PositiveSmallIntegerField(default=0, verbose_name='Код выхода')
    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Дата запуска')

    class Meta:
        verbose_name = 'Прогон'
        verbose_name_plural = 'Прогоны'
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.get_statement_display()} #{self.pk} ({self.status})"

    @classmethod
    def record(cls, report, exit_code):
        """Сохранить отчёт TransferReport вместе со строками по простым"""
        with transaction.atomic():
            run = cls.objects.create(
                statement=report.statement,
                manifest=report.manifest,
                report=report.as_dict(),
                status='violated' if report.violated else 'ok',
                exit_code=exit_code,
            )
            PrimeResult.objects.bulk_create([
                PrimeResult(
                    run=run,
                    p=row.p,
                    field=row.field,
                    depth=row.depth,
                    grid_size=row.grid_size,
                    hypothesis_ok=row.hypothesis_ok,
                    min_n=row.min_N,
                    violations=len(row.violations),
                    flags=';'.join(sorted(row.flags)),
                )
                for row in report.rows
            ])
        return run


class PrimeResult(models.Model):
    """Строка отчёта: одно простое p и одно направление"""
    run = models.ForeignKey(SweepRun, on_delete=models.CASCADE, related_name='primes', verbose_name='Прогон')
    p = models.PositiveIntegerField(verbose_name='p')
    field = models.CharField(max_length=32, verbose_name='Поля')
    depth = models.PositiveIntegerField(null=True, blank=True, verbose_name='Глубина')
    grid_size = models.PositiveIntegerField(default=0, verbose_name='Размер сетки')
    hypothesis_ok = models.BooleanField(null=True, blank=True, verbose_name='Гипотеза выполнена')
    min_n = models.PositiveIntegerField(null=True, blank=True, verbose_name='Минимальное N')
    violations = models.PositiveIntegerField(default=0, verbose_name='Нарушения')
    flags = models.CharField(max_length=255, blank=True, verbose_name='Флаги')

    class Meta:
        verbose_name = 'Результат по простому'
        verbose_name_plural = 'Результаты по простым'
        ordering = ['run', 'p', 'field']

    def __str__(self):
        return f"{self.run_id}: p={self.p} {self.field}"
