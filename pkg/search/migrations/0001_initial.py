# Generated by Django 6.0.2 on 2026-10-16 00:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SearchCheckpoint',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('diameter', models.PositiveSmallIntegerField(unique=True)),
                ('next_code', models.BigIntegerField(default=0)),
                ('invertible_codes', models.JSONField(blank=True, default=list)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
        ),
        migrations.CreateModel(
            name='SearchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('diameter', models.PositiveSmallIntegerField()),
                ('total_generators', models.BigIntegerField()),
                ('invertible_codes', models.JSONField(default=list, help_text='Invertible generator codes, ascending')),
                ('class_counts', models.JSONField(blank=True, default=dict)),
                ('parallelism', models.PositiveIntegerField(default=1)),
                ('wall_time_ms', models.BigIntegerField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
