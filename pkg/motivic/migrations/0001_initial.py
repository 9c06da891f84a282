import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='SweepRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('statement', models.CharField(choices=[('bound', 'Перенос оценки'), ('lincomb', 'Перенос оценки для линейных комбинаций'), ('coeff', 'Перенос коэффициентов'), ('dep', 'Перенос линейной зависимости'), ('rigidity', 'Жёсткость RF/ZZ'), ('factor', 'Факторизация через профиль')], max_length=20, verbose_name='Утверждение')),
                ('manifest', models.JSONField(default=dict, verbose_name='Манифест')),
                ('report', models.JSONField(default=dict, verbose_name='Отчёт')),
                ('status', models.CharField(choices=[('ok', 'Без нарушений'), ('violated', 'Есть нарушения')], max_length=20, verbose_name='Статус')),
                ('exit_code', models.PositiveSmallIntegerField(default=0, verbose_name='Код выхода')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Дата запуска')),
            ],
            options={
                'verbose_name': 'Прогон',
                'verbose_name_plural': 'Прогоны',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='PrimeResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('p', models.PositiveIntegerField(verbose_name='p')),
                ('field', models.CharField(max_length=32, verbose_name='Поля')),
                ('depth', models.PositiveIntegerField(blank=True, null=True, verbose_name='Глубина')),
                ('grid_size', models.PositiveIntegerField(default=0, verbose_name='Размер сетки')),
                ('hypothesis_ok', models.BooleanField(blank=True, null=True, verbose_name='Гипотеза выполнена')),
                ('min_n', models.PositiveIntegerField(blank=True, null=True, verbose_name='Минимальное N')),
                ('violations', models.PositiveIntegerField(default=0, verbose_name='Нарушения')),
                ('flags', models.CharField(blank=True, max_length=255, verbose_name='Флаги')),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='primes', to='motivic.sweeprun', verbose_name='Прогон')),
            ],
            options={
                'verbose_name': 'Результат по простому',
                'verbose_name_plural': 'Результаты по простым',
                'ordering': ['run', 'p', 'field'],
            },
        ),
    ]
